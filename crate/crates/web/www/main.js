// Built by `wasm-bindgen --target web --out-dir www/pkg`.
import init, { regimes, boundary, values } from "./pkg/sellmax_web.js";

const $ = (id) => document.getElementById(id);
const fmt = (v) => v.toPrecision(6);

function plot(t, b, h) {
  const c = $("plot");
  const ctx = c.getContext("2d");
  const pad = 40;
  ctx.clearRect(0, 0, c.width, c.height);
  const top = Math.max(...b, ...h, 1e-9);
  const x = (s) => pad + (c.width - 2 * pad) * s / t[t.length - 1];
  const y = (v) => c.height - pad - (c.height - 2 * pad) * v / top;
  ctx.strokeStyle = "#000";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, c.height - pad);
  ctx.lineTo(c.width - pad, c.height - pad);
  ctx.stroke();
  ctx.fillText("0", pad - 12, c.height - pad + 4);
  ctx.fillText(fmt(top), 2, pad + 4);
  ctx.fillText("t", c.width / 2, c.height - 10);
  const line = (ys, color, dash) => {
    ctx.strokeStyle = color;
    ctx.setLineDash(dash);
    ctx.beginPath();
    ys.forEach((v, i) => (i ? ctx.lineTo(x(t[i]), y(v)) : ctx.moveTo(x(t[i]), y(v))));
    ctx.stroke();
    ctx.setLineDash([]);
  };
  line(b, "#1f5fbf", []);
  line(h, "#c0392b", [6, 4]);
  ctx.fillStyle = "#1f5fbf";
  ctx.fillText("boundary b(t)", c.width - 150, pad);
  ctx.fillStyle = "#c0392b";
  ctx.fillText("zero curve h(t)", c.width - 150, pad + 16);
  ctx.fillStyle = "#000";
}

function run() {
  $("error").textContent = "";
  const mu = Number($("mu").value);
  const sigma = Number($("sigma").value);
  const horizon = Number($("horizon").value);
  const steps = Number($("steps").value);
  try {
    const r = regimes(mu, sigma);
    $("lambda").textContent = fmt(r.lambda);
    $("infimum").textContent = r.infimum;
    $("supremum").textContent = r.supremum;
    const v = values(mu, sigma, horizon);
    $("gain").textContent = fmt(v.gain);
    $("v2").textContent = `${fmt(v.v2)} (${v.v2_regime})`;
    $("v1").textContent = "";
    const c = $("plot");
    c.getContext("2d").clearRect(0, 0, c.width, c.height);
    if (r.infimum === "Boundary") {
      const b = boundary(mu, sigma, horizon, steps);
      $("v1").textContent = fmt(b.v1);
      plot(b.t, b.b, b.h);
    } else {
      $("v1").textContent = r.infimum === "StopImmediately" ? "sell at once" : "hold until T";
    }
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
  }
}

await init();
$("run").addEventListener("click", run);
run();
