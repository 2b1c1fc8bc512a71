import init, { closureTable, flowAttractors, cantorReport } from "./pkg/hullflow_web.js";

const $ = (id) => document.getElementById(id);
const set = (xs) => "{" + xs.join(",") + "}";
const family = (xss) => (xss.length ? "{" + xss.map(set).join(", ") + "}" : "[]");

function show(out, f) {
  try {
    out.innerHTML = f();
  } catch (e) {
    out.innerHTML = `<p class="err">${e.message ?? e}</p>`;
  }
}

function args() {
  return [$("instance").value, $("convention").value];
}

function renderClosure() {
  const [src, conv] = args();
  const r = JSON.parse(closureTable(src, $("ct-system").value, conv));
  const rows = r.rows.map((x) => `<tr><td>${set(x.set)}</td><td>${set(x.closure)}</td></tr>`).join("");
  const flags = Object.entries(r.flags).map(([k, v]) => `${k}=${v}`).join("  ");
  return `<table><tr><th>Z</th><th>cl(Z)</th></tr>${rows}</table><pre>${flags}</pre>`;
}

function renderAttractors() {
  const [src, conv] = args();
  const r = JSON.parse(flowAttractors(src, $("fa-flow").value, $("fa-covering").value, conv));
  const lines = [`orbits      ${family(r.orbits)}`, `pre-rooms   ${family(r.pre_rooms)}  partition=${r.rooms_partition}`];
  for (const [k, v] of Object.entries(r.attractors)) lines.push(`${k.padEnd(12)}${family(v)}`);
  return `<pre>${lines.join("\n")}</pre>`;
}

function renderCantor() {
  const [src, conv] = args();
  const r = JSON.parse(cantorReport(src, $("cc-function").value, $("cc-system").value, conv));
  const e = r.explication;
  return `<pre>C+ ${r.plus}   C- ${r.minus}   commutative ${r.commutative}
preserves un-family ${r.preserves_unfamily}   integrity ${r.integrity}
explication lhs=${e.lhs} rhs_A=${e.rhs_A} rhs_Ac=${e.rhs_Ac} agree=${r.explication_agrees}</pre>`;
}

await init();
$("ct-run").onclick = () => show($("ct-out"), renderClosure);
$("fa-run").onclick = () => show($("fa-out"), renderAttractors);
$("cc-run").onclick = () => show($("cc-out"), renderCantor);
