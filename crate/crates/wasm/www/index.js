import init, { countAllMethods, descentPolynomial, tableauxCount } from "./pkg/cdes_wasm.js";

const $ = (id) => document.getElementById(id);

function setText(el, tag, text, cls) {
  const node = document.createElement(tag);
  node.textContent = text;
  if (cls) node.className = cls;
  el.append(node);
}

function table(rows, columns) {
  const t = document.createElement("table");
  const head = t.insertRow();
  for (const c of columns) setText(head, "th", c);
  for (const r of rows) {
    const tr = t.insertRow();
    for (const c of columns) setText(tr, "td", r[c]);
  }
  return t;
}

function run(out, f) {
  out.replaceChildren();
  try {
    f(out);
  } catch (e) {
    setText(out, "p", e.message ?? String(e), "error");
  }
}

const fmtSet = (s) => "{" + s.join(",") + "}";

function onCount(ev) {
  ev.preventDefault();
  run($("count-out"), (out) => {
    const r = JSON.parse(countAllMethods(Number($("count-n").value), $("count-set").value));
    setText(out, "p", `cdes_${r.query.n}(${fmtSet(r.query.set)}) = ${r.result}` +
      (r.agree ? "" : "  (methods disagree)"), r.agree ? "" : "error");
    out.append(table(r.methods, ["method", "count"]));
  });
}

function onPoly(ev) {
  ev.preventDefault();
  run($("poly-out"), (out) => {
    const r = JSON.parse(descentPolynomial(Number($("poly-n").value)));
    setText(out, "pre", r.result);
    const rows = r.terms.map((t) => ({ set: fmtSet(t.set), size: t.ydeg, count: t.count }));
    out.append(table(rows, ["set", "size", "count"]));
  });
}

function onTableaux(ev) {
  ev.preventDefault();
  run($("tab-out"), (out) => {
    const r = JSON.parse(tableauxCount($("tab-shape").value));
    const diagram = document.createElement("div");
    diagram.className = "diagram";
    const parts = r.query.shape;
    diagram.style.gridTemplateColumns = `repeat(${parts[0]}, 1.4rem)`;
    parts.forEach((len, row) => {
      for (let col = 0; col < len; col++) {
        const cell = document.createElement("div");
        cell.style.gridRow = row + 1;
        cell.style.gridColumn = col + 1;
        diagram.append(cell);
      }
    });
    out.append(diagram);
    setText(out, "p", `${r.result} tableaux = cdes_${r.n}(${fmtSet(r.set)})`);
    if (r.brute !== null) setText(out, "p", `enumerated fillings: ${r.brute}`);
  });
}

await init();
$("count-form").addEventListener("submit", onCount);
$("poly-form").addEventListener("submit", onPoly);
$("tab-form").addEventListener("submit", onTableaux);
