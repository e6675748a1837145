import init, { analyze, lift, hom } from './pkg/relift_wasm.js';

const $ = (id) => document.getElementById(id);
const SVG = 'http://www.w3.org/2000/svg';
const PALETTE = ['#4477aa', '#ee6677', '#228833', '#ccbb44', '#66ccee', '#aa3377', '#bbbbbb'];

function el(name, attrs, text) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// Vertices on a circle; `color(name)` picks each fill.
function draw(svg, graph, color) {
  svg.replaceChildren();
  const w = +svg.getAttribute('width');
  const h = +svg.getAttribute('height');
  const r = Math.min(w, h) / 2 - 24;
  const n = graph.vertices.length;
  const pos = {};
  graph.vertices.forEach((v, i) => {
    const t = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
    pos[v] = [w / 2 + r * Math.cos(t), h / 2 + r * Math.sin(t)];
  });
  for (const [a, b] of graph.edges) {
    svg.append(el('line', { x1: pos[a][0], y1: pos[a][1], x2: pos[b][0], y2: pos[b][1], stroke: '#888' }));
  }
  for (const v of graph.vertices) {
    const [x, y] = pos[v];
    svg.append(el('circle', { cx: x, cy: y, r: 11, fill: color(v), stroke: '#333' }));
    svg.append(el('text', { x, y: y + 4, 'text-anchor': 'middle', 'font-size': 11, fill: '#fff' }, v));
  }
}

function show(out, result) {
  out.classList.toggle('err', 'error' in result);
  out.textContent = 'error' in result ? result.error : JSON.stringify(result, null, 2);
}

let analysis = null;

function drawCut() {
  if (!analysis) return;
  const cut = analysis.cuts[+$('an-cut').value] || [];
  // colour each vertex by the piece of this cut that contains it
  const pieceOf = {};
  analysis.pieces
    .filter((p) => p.cut.join() === cut.join())
    .forEach((p, i) => p.vertices.forEach((v) => { if (!cut.includes(v)) pieceOf[v] = i; }));
  draw($('an-svg'), analysis.graph, (v) =>
    cut.includes(v) ? '#d33' : v in pieceOf ? PALETTE[pieceOf[v] % PALETTE.length] : '#999');
}

function runAnalyze() {
  const r = JSON.parse(analyze($('an-input').value));
  show($('an-out'), r);
  analysis = 'error' in r ? null : r;
  const sel = $('an-cut');
  sel.replaceChildren();
  if (analysis) {
    analysis.cuts.forEach((c, i) => sel.append(new Option(`{${c.join(', ')}}`, i)));
    drawCut();
  } else {
    $('an-svg').replaceChildren();
  }
}

function runLift() {
  const r = JSON.parse(lift($('lift-input').value, $('lift-family').value));
  if ('error' in r) return show($('lift-out'), r);
  const lines = r.entries.map((e) =>
    `ext ${e.index} (arity ${e.arity}): ` +
    (e.tuples.length ? e.tuples.map((t) => `(${t.join(' ')})`).join(' ') : 'none'));
  $('lift-out').classList.remove('err');
  $('lift-out').textContent = `${r.ext_tuples} extension tuples\n${lines.join('\n')}`;
}

function runHom() {
  const r = JSON.parse(hom($('hom-a').value, $('hom-b').value, $('hom-mode').value));
  show($('hom-out'), r);
  if ('error' in r) return;
  const targets = r.b.vertices;
  const colorB = (v) => PALETTE[targets.indexOf(v) % PALETTE.length];
  draw($('hom-svg-b'), r.b, colorB);
  draw($('hom-svg-a'), r.a, (v) => (r.map ? colorB(r.map[v]) : '#999'));
}

await init();
$('an-run').onclick = runAnalyze;
$('an-cut').onchange = drawCut;
$('lift-run').onclick = runLift;
$('hom-run').onclick = runHom;
runAnalyze();
