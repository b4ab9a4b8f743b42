use serde::{Deserialize, Serialize};

/// A group of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Greedily merges neighbours of a sorted list whose gap is at most
/// `rel_tol · max(1, |λ|)`; each cluster reports the mean of its members.
pub fn cluster_spectrum(sorted: &[f64], rel_tol: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    let mut last = f64::NEG_INFINITY;
    for &v in sorted {
        let joins = !out.is_empty() && v - last <= rel_tol * v.abs().max(1.0);
        if joins {
            let c = out.last_mut().unwrap();
            c.multiplicity += 1;
            sum += v;
            c.value = sum / c.multiplicity as f64;
        } else {
            out.push(Cluster {
                value: v,
                multiplicity: 1,
            });
            sum = v;
        }
        last = v;
    }
    out
}
