import init, { corpus_source, names, plot, distance, trace } from "./pkg/fuzzend_web.js";

const $ = (id) => document.getElementById(id);
// infinite endpoints arrive as strings
const num = (v) => (typeof v === "number" ? v : String(v).startsWith("-") ? -Infinity : Infinity);
const colors = ["rgba(30, 90, 200, 0.55)", "rgba(210, 80, 30, 0.55)"];

function status(message, isError) {
  $("status").textContent = message;
  $("status").className = isError ? "error" : "";
}

function attempt(f) {
  try {
    f();
  } catch (e) {
    status(e.message ?? String(e), true);
  }
}

function fill(select, items, keep) {
  const previous = select.value;
  const fixed = keep ? [...select.options].filter((o) => o.value === "") : [];
  select.replaceChildren(...fixed);
  for (const name of items) {
    select.add(new Option(name, name));
  }
  if (items.includes(previous)) select.value = previous;
}

function refreshNames() {
  attempt(() => {
    const n = JSON.parse(names($("source").value));
    fill($("plot-a"), n.fuzzysets, false);
    fill($("plot-b"), n.fuzzysets, true);
    fill($("limit"), n.fuzzysets, false);
    fill($("seq"), n.sequences, false);
    status(`${n.fuzzysets.length} fuzzy sets, ${n.sequences.length} sequences`);
  });
}

function draw(plots) {
  const canvas = $("canvas");
  const ctx = canvas.getContext("2d");
  const [lo, hi] = plots.reduce(
    ([a, b], p) => [Math.min(a, num(p.window[0])), Math.max(b, num(p.window[1]))],
    [Infinity, -Infinity],
  );
  const pad = 24;
  const sx = (x) => pad + ((x - lo) / (hi - lo || 1)) * (canvas.width - 2 * pad);
  const sy = (a) => canvas.height - pad - a * (canvas.height - 2 * pad);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(sx(lo), sy(1), sx(hi) - sx(lo), sy(0) - sy(1));
  ctx.fillStyle = "#444";
  ctx.fillText(String(lo), sx(lo), canvas.height - 6);
  ctx.fillText(String(hi), sx(hi) - 12, canvas.height - 6);
  ctx.fillText("1", 6, sy(1) + 4);
  plots.forEach((p, k) => {
    ctx.fillStyle = colors[k];
    // prisms: each cut part extended down to the base line
    for (const prism of p.prisms) {
      for (const [a, b] of prism.set) {
        const x0 = sx(Math.max(num(a), lo));
        const x1 = sx(Math.min(num(b), hi));
        ctx.fillRect(x0, sy(prism.top), Math.max(x1 - x0, 2), sy(0) - sy(prism.top));
      }
    }
    ctx.fillRect(sx(lo), sy(0) - 1, sx(hi) - sx(lo), 2);
  });
}

function doPlot() {
  attempt(() => {
    const source = $("source").value;
    const chosen = [$("plot-a").value, $("plot-b").value].filter((n) => n);
    draw(chosen.map((n) => JSON.parse(plot(source, n, $("resolution").value))));
    status(`plotted ${chosen.join(" and ")}`);
  });
}

function doDistance() {
  attempt(() => {
    const a = $("plot-a").value;
    const b = $("plot-b").value || a;
    const d = JSON.parse(distance($("source").value, a, b));
    const send = d.sendograph.error ? `undefined (${d.sendograph.error})` : d.sendograph;
    $("distance-out").textContent = `endograph  ${d.endograph}\nsendograph ${send}`;
  });
}

function doTrace() {
  attempt(() => {
    const t = JSON.parse(trace($("source").value, $("seq").value, $("limit").value, Number($("nmax").value)));
    const rows = t.trace.map((p) => `n = ${String(p.n).padStart(7)}  ${p.value}`);
    $("trace-out").textContent = `${rows.join("\n")}\n\nendograph metric: ${t.hend}\nGamma: ${t.gamma}`;
  });
}

await init();
$("source").value = corpus_source();
refreshNames();
$("source").addEventListener("change", refreshNames);
$("reload").addEventListener("click", () => {
  $("source").value = corpus_source();
  refreshNames();
});
$("plot").addEventListener("click", doPlot);
$("distance").addEventListener("click", doDistance);
$("trace").addEventListener("click", doTrace);
$("plot-a").value = "ucn";
doPlot();
