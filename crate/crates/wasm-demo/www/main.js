// Built with `wasm-pack build --target web --out-dir www/pkg` from crates/wasm-demo.
import init, { fringe_curve, duality_point, duality_curve } from "./pkg/mzi_wasm_demo.js";

const ids = ["sx", "lambda", "theta", "a", "gamma", "delta", "beta"];
const inputs = Object.fromEntries(ids.map((id) => [id, document.getElementById(id)]));

function values() {
  const v = Object.fromEntries(ids.map((id) => [id, Number(inputs[id].value)]));
  // Keep S_x inside the Bloch ball of radius √λ.
  const r = Math.sqrt(v.lambda);
  v.sx = Math.max(-r, Math.min(r, v.sx));
  return v;
}

function args(v) {
  return [v.sx, v.lambda, v.theta, v.a, v.gamma, v.delta, v.beta];
}

function plot(canvas, series, xRange, marker) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 28;
  const sx = (x) => pad + ((x - xRange[0]) / (xRange[1] - xRange[0])) * (w - 2 * pad);
  const sy = (y) => h - pad - y * (h - 2 * pad);
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#bbb";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#666";
  ctx.fillText("1", 8, sy(1) + 4);
  ctx.fillText("0", 8, sy(0) + 4);
  ctx.fillText(xRange[0].toFixed(2), pad, h - 8);
  ctx.fillText(xRange[1].toFixed(2), w - pad - 24, h - 8);
  if (marker !== undefined) {
    ctx.strokeStyle = "#888";
    ctx.setLineDash([3, 3]);
    ctx.beginPath();
    ctx.moveTo(sx(marker), pad);
    ctx.lineTo(sx(marker), h - pad);
    ctx.stroke();
    ctx.setLineDash([]);
  }
  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    ctx.beginPath();
    let pen = false;
    for (const [x, y] of s.points) {
      if (!Number.isFinite(y)) { pen = false; continue; }
      if (s.dots) {
        ctx.fillRect(sx(x) - 1.5, sy(y) - 1.5, 3, 3);
      } else if (pen) {
        ctx.lineTo(sx(x), sy(y));
      } else {
        ctx.moveTo(sx(x), sy(y));
        pen = true;
      }
    }
    if (!s.dots) ctx.stroke();
  }
}

function triples(buf, i, j) {
  const out = [];
  for (let k = 0; k < buf.length; k += 3) out.push([buf[k + i], buf[k + j]]);
  return out;
}

function fmt(x) {
  return Number.isFinite(x) ? x.toFixed(6) : "undefined";
}

function render() {
  const v = values();
  for (const id of ids) inputs[id].nextElementSibling.textContent = (id === "sx" ? v.sx : v[id]).toFixed(3);
  const error = document.getElementById("error");
  error.textContent = "";
  try {
    const f = fringe_curve(...args(v), 241);
    const sampled = triples(f, 0, 1).filter((_, k) => k % 4 === 0);
    plot(document.getElementById("fringe"), [
      { color: "#d9541e", points: triples(f, 0, 2) },
      { color: "#1f6fb4", points: sampled, dots: true },
    ], [0, 2 * Math.PI]);

    const overBeta = document.querySelector("input[name=axis]:checked").value === "beta";
    const c = duality_curve(...args(v), overBeta, 301);
    const range = overBeta ? [0, Math.PI] : [-Math.sqrt(v.lambda), Math.sqrt(v.lambda)];
    plot(document.getElementById("curve"), [
      { color: "#1f6fb4", points: triples(c, 0, 1) },
      { color: "#2a9d4b", points: triples(c, 0, 2) },
    ], range[0] < range[1] ? range : [-1, 1], overBeta ? v.beta : v.sx);

    const [V, Vscan, D, residual, wa, wb] = duality_point(...args(v));
    const rows = [["V (closed form)", V], ["V (phase scan)", Vscan], ["D", D], ["V² + D²", V * V + D * D],
      ["1 − V² − D²", residual], ["ω_a", wa], ["ω_b", wb]];
    document.getElementById("point").innerHTML =
      rows.map(([k, x]) => `<tr><td>${k}</td><td>${fmt(x)}</td></tr>`).join("");
  } catch (e) {
    error.textContent = e.message ?? String(e);
  }
}

await init();
for (const el of document.querySelectorAll("input")) el.addEventListener("input", render);
render();
