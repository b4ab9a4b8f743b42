import init, { spaces, analyzeMetric, scnAlongLine, solveEinstein } from "./pkg/flagstab_web.js";

const $ = (id) => document.getElementById(id);
let catalog = [];

function fmt(v) {
  return typeof v === "number" ? v.toPrecision(6) : String(v);
}

function currentDims() {
  return catalog.find((s) => s.id === $("space").value).dims;
}

function buildSliders(values) {
  const box = $("sliders");
  box.innerHTML = "";
  values.forEach((v, i) => {
    const label = document.createElement("label");
    const input = document.createElement("input");
    Object.assign(input, { type: "range", min: "0.05", max: "10", step: "0.01", value: String(v) });
    const out = document.createElement("span");
    out.textContent = fmt(v);
    input.addEventListener("input", () => {
      const xs = $("coords").value.split(",");
      xs[i] = input.value;
      out.textContent = input.value;
      $("coords").value = xs.join(",");
      refresh();
    });
    label.append(`x${i + 1} (d=${currentDims()[i]}) `, input, " ", out);
    box.append(label);
  });
}

function showAnalysis() {
  try {
    const { analysis, report } = JSON.parse(analyzeMetric($("space").value, $("coords").value));
    const lines = [
      `rho       ${analysis.rho.map(fmt).join(", ")}`,
      `2rho      ${fmt(analysis.two_rho)}`,
      `residual  ${analysis.residual.toExponential(2)}`,
      `Sc        ${fmt(analysis.sc)}`,
      `Sc_N      ${fmt(analysis.sc_n)}`,
    ];
    if (report) {
      lines.push(
        "",
        "Einstein: stability spectrum of L_p",
        `spectrum  ${report.eigenvalues.map((c) => `${fmt(c.value)} (x${c.multiplicity})`).join(", ")}`,
        `lambda_p  ${fmt(report.lambda_p)}   lambda_max ${fmt(report.lambda_p_max)}`,
        `coindex   ${report.coindex}`,
      );
    } else {
      lines.push("", "not Einstein: no stability report");
    }
    $("analysis").textContent = lines.join("\n");
    $("analysis").className = "";
  } catch (e) {
    $("analysis").textContent = e.message ?? String(e);
    $("analysis").className = "err";
  }
}

function drawPlot() {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  $("plotmsg").textContent = "";
  let points;
  try {
    points = JSON.parse(
      scnAlongLine($("space").value, $("coords").value, $("direction").value,
        Number($("t0").value), Number($("t1").value), 200),
    );
  } catch (e) {
    $("plotmsg").textContent = e.message ?? String(e);
    $("plotmsg").className = "err";
    return;
  }
  const valid = points.filter((p) => p.scn !== null);
  if (valid.length < 2) {
    $("plotmsg").textContent = "the line leaves the positive cone everywhere";
    return;
  }
  const ys = valid.map((p) => p.scn);
  let lo = Math.min(...ys), hi = Math.max(...ys);
  if (hi - lo < 1e-12) { lo -= 1; hi += 1; }
  const pad = 30, w = canvas.width - 2 * pad, h = canvas.height - 2 * pad;
  const t0 = points[0].t, t1 = points[points.length - 1].t;
  const X = (t) => pad + ((t - t0) / (t1 - t0)) * w;
  const Y = (v) => pad + (1 - (v - lo) / (hi - lo)) * h;
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w, h);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(hi.toPrecision(6), 2, pad - 6);
  ctx.fillText(lo.toPrecision(6), 2, pad + h + 18);
  ctx.fillText(`t = ${t0}`, pad, canvas.height - 4);
  ctx.fillText(`t = ${t1}`, pad + w - 50, canvas.height - 4);
  if (t0 < 0 && t1 > 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath(); ctx.moveTo(X(0), pad); ctx.lineTo(X(0), pad + h); ctx.stroke();
  }
  ctx.strokeStyle = "#1565c0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  let pen = false;
  for (const p of points) {
    if (p.scn === null) { pen = false; continue; }
    pen ? ctx.lineTo(X(p.t), Y(p.scn)) : ctx.moveTo(X(p.t), Y(p.scn));
    pen = true;
  }
  ctx.stroke();
}

function refresh() {
  showAnalysis();
  drawPlot();
}

function runSolve() {
  const out = $("solution");
  out.textContent = "solving…";
  setTimeout(() => {
    try {
      const s = JSON.parse(solveEinstein($("space").value, Number($("starts").value),
        BigInt($("seed").value || 0), $("ansatz").value));
      const rows = s.classes.map((c, i) =>
        `<tr><td>${i + 1}</td><td style="text-align:left">${c.coords.map((v) => v.toFixed(4)).join(", ")}</td>` +
        `<td>${c.report.two_rho.toFixed(4)}</td><td>${c.report.coindex}</td><td>${c.hits}</td>` +
        `<td><button data-i="${i}">load</button></td></tr>`).join("");
      out.innerHTML =
        `<p>${s.classes.length} classes from ${s.converged} of ${s.starts} converged starts; automorphism group of order ${s.group_order}.</p>` +
        `<table><tr><th>#</th><th>coordinates (x<sub>1</sub> = 1)</th><th>2ρ</th><th>coindex</th><th>hits</th><th></th></tr>${rows}</table>`;
      out.className = "";
      out.querySelectorAll("button").forEach((b) => b.addEventListener("click", () => {
        const xs = s.classes[Number(b.dataset.i)].coords.map((v) => v.toPrecision(12));
        $("coords").value = xs.join(",");
        buildSliders(xs.map(Number));
        refresh();
      }));
    } catch (e) {
      out.textContent = e.message ?? String(e);
      out.className = "err";
    }
  }, 10);
}

function selectSpace() {
  const r = currentDims().length;
  const ones = Array(r).fill(1);
  $("coords").value = ones.join(",");
  $("direction").value = ones.map((_, i) => (i % 2 ? -1 : 1)).join(",");
  $("solution").textContent = "";
  buildSliders(ones);
  refresh();
}

await init();
catalog = JSON.parse(spaces());
for (const s of catalog) {
  $("space").append(new Option(`${s.id} (r = ${s.dims.length})`, s.id));
}
$("space").value = "f4";
$("space").addEventListener("change", selectSpace);
$("coords").addEventListener("change", () => {
  buildSliders($("coords").value.split(",").map(Number));
  refresh();
});
for (const id of ["direction", "t0", "t1"]) $(id).addEventListener("change", drawPlot);
$("solve").addEventListener("click", runSolve);
selectSpace();
