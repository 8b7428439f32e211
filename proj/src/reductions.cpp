#include "streq/reductions.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace streq {

namespace {

std::string default_label(int n, int v) {
  if (n <= 26) return std::string(1, static_cast<char>('a' + v - 1));
  return "v" + std::to_string(v);
}

// Interns one symbol per vertex, indexed 1..n.
std::vector<SymbolId> intern_labels(System& sys, const Graph& g) {
  std::vector<SymbolId> ids(g.n + 1, 0);
  for (int v = 1; v <= g.n; ++v) ids[v] = sys.symbol(g.label(v));
  return ids;
}

// Interns a separator symbol, refusing names already taken by a vertex.
SymbolId separator(System& sys, const Graph& g, const std::string& name) {
  for (int v = 1; v <= g.n; ++v)
    if (g.label(v) == name)
      throw Error("vertex label '" + name + "' collides with a separator symbol");
  return sys.symbol(name);
}

void append(SymbolString& w, SymbolId s, int times = 1) {
  for (int i = 0; i < times; ++i) w.push_back(s);
}

void require_graph(const Graph& g, int num_colors = 0) {
  if (auto bad = g.check(num_colors)) throw Error("bad graph: " + *bad);
}

void require_kappa(int kappa) {
  if (kappa < 2)
    throw BadKappa("clique size must be at least 2, got " + std::to_string(kappa));
}

std::string idx2(const char* stem, int i, int j, bool primed = false) {
  std::string s = stem + std::to_string(i) + "_" + std::to_string(j);
  if (primed) s += "'";
  return s;
}

}  // namespace

bool Graph::adjacent(int u, int v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::string Graph::label(int v) const {
  if (!labels.empty()) return labels[v - 1];
  return default_label(n, v);
}

std::optional<std::string> Graph::check(int num_colors) const {
  if (n < 0) return "negative vertex count";
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [s, t] = edges[e];
    if (s < 1 || t > n || s >= t)
      return "edge (" + std::to_string(s) + "," + std::to_string(t) +
             ") is not 1 <= s < t <= n";
    if (e > 0 && !(edges[e - 1] < edges[e])) return "edges not sorted and distinct";
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n) return "label count differs from n";
    for (const auto& l : labels) {
      if (l.empty() || l == "*" || l == "|" || l == "#")
        return "label '" + l + "' is reserved or empty";
      if (l.find_first_of(" \t\r\n") != std::string::npos)
        return "label '" + l + "' contains whitespace";
    }
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return "duplicate vertex labels";
  }
  if (!colors.empty()) {
    if (static_cast<int>(colors.size()) != n) return "color count differs from n";
    for (int c : colors)
      if (c < 1) return "colors must be positive";
    for (auto [s, t] : edges)
      if (colors[s - 1] == colors[t - 1])
        return "edge (" + std::to_string(s) + "," + std::to_string(t) +
               ") joins two vertices of color " + std::to_string(colors[s - 1]);
  }
  if (num_colors > 0) {
    if (colors.empty()) return "coloring required but missing";
    for (int c : colors)
      if (c > num_colors) return "color " + std::to_string(c) + " out of range";
  }
  return std::nullopt;
}

ReductionOutput gen_clique_single_eq(const Graph& g, int kappa) {
  require_kappa(kappa);
  require_graph(g);
  ReductionOutput out;
  out.kind = ReductionKind::CliqueSingleEq;
  out.graph = g;
  out.kappa = kappa;
  System& sys = out.system;

  auto vsym = intern_labels(sys, g);
  SymbolString target;
  target.push_back(separator(sys, g, "y0"));
  int j = 0;
  for (auto [s, t] : g.edges) {
    ++j;
    target.push_back(vsym[s]);
    target.push_back(vsym[t]);
    target.push_back(separator(sys, g, "y" + std::to_string(j)));
  }

  std::vector<BlockId> x(kappa + 1);
  for (int i = 1; i <= kappa; ++i) {
    x[i] = sys.block("X" + std::to_string(i));
    out.roles[x[i]] = {Role::VertexSelector, i, 0, false};
  }
  std::vector<BlockId> pattern;
  auto gap = [&] {
    BlockId b = sys.joker();
    out.roles[b] = {Role::Gap};
    pattern.push_back(b);
  };
  gap();
  for (int a = 1; a <= kappa; ++a)
    for (int b = a + 1; b <= kappa; ++b) {
      pattern.push_back(x[a]);
      pattern.push_back(x[b]);
      gap();
    }
  sys.add_equation(std::move(target), std::move(pattern));
  return out;
}

namespace {

// Shared skeleton of the two-equation constructions. The plain form has
// empty gadget() hooks; the AllowEmpty form adds the gamma/phi prefix and
// gamma fences around every vertex run.
struct TwoEqBuilder {
  ReductionOutput out;
  const Graph& g;
  int kappa;
  System& sys;
  std::vector<SymbolId> vsym;
  BlockId Z, Zp, B0;
  std::vector<BlockId> A;                  // A[0..kappa]
  std::vector<std::vector<BlockId>> X, Xp; // X[i][j], j != i
  std::vector<std::vector<BlockId>> B;     // B[a][b], a < b

  TwoEqBuilder(const Graph& graph, int k, ReductionKind kind)
      : g(graph), kappa(k), sys(out.system) {
    require_kappa(k);
    require_graph(g);
    out.kind = kind;
    out.graph = g;
    out.kappa = k;
    vsym = intern_labels(sys, g);

    Z = sys.block("Z");
    Zp = sys.block("Z'");
    out.roles[Z] = {Role::Gadget};
    out.roles[Zp] = {Role::Gadget, 0, 0, true};
    A.resize(kappa + 1);
    for (int i = 0; i <= kappa; ++i) {
      A[i] = sys.block("A" + std::to_string(i));
      out.roles[A[i]] = {Role::Gap, i, 0, false};
    }
    B0 = sys.block("B0");
    out.roles[B0] = {Role::Gap};
    B.assign(kappa + 1, std::vector<BlockId>(kappa + 1, 0));
    X.assign(kappa + 1, std::vector<BlockId>(kappa + 1, 0));
    Xp.assign(kappa + 1, std::vector<BlockId>(kappa + 1, 0));
    for (int a = 1; a <= kappa; ++a)
      for (int b = a + 1; b <= kappa; ++b) {
        B[a][b] = sys.block(idx2("B", a, b));
        out.roles[B[a][b]] = {Role::Gap, a, b, false};
      }
    for (int i = 1; i <= kappa; ++i)
      for (int j = 1; j <= kappa; ++j) {
        if (i == j) continue;
        X[i][j] = sys.block(idx2("X", i, j));
        Xp[i][j] = sys.block(idx2("X", i, j, true));
        out.roles[X[i][j]] = {Role::VertexSelector, i, j, false};
        out.roles[Xp[i][j]] = {Role::VertexSelector, i, j, true};
      }
  }

  // Target body shared by both constructions:
  //   z [after_z1] x0 (v_i^(kappa-1) x_i)_i z [after_z2] y0 (e_j y_j)_j
  // with fences around each vertex run when `fence` is set (head before x0,
  // open before each run, close after it), and the given anchor symbols
  // spliced in right after each z (both used by the AllowEmpty form only).
  SymbolString body(bool fence, SymbolId head, SymbolId open, SymbolId close,
                    const SymbolString& after_z1 = {}, const SymbolString& after_z2 = {}) {
    SymbolString t;
    t.push_back(separator(sys, g, "z"));
    t.insert(t.end(), after_z1.begin(), after_z1.end());
    if (fence) t.push_back(head);
    t.push_back(separator(sys, g, "x0"));
    for (int v = 1; v <= g.n; ++v) {
      if (fence) t.push_back(open);
      append(t, vsym[v], kappa - 1);
      if (fence) t.push_back(close);
      t.push_back(separator(sys, g, "x" + std::to_string(v)));
    }
    t.push_back(sys.symbol("z"));
    t.insert(t.end(), after_z2.begin(), after_z2.end());
    t.push_back(separator(sys, g, "y0"));
    int j = 0;
    for (auto [s, t2] : g.edges) {
      ++j;
      t.push_back(vsym[s]);
      t.push_back(vsym[t2]);
      t.push_back(separator(sys, g, "y" + std::to_string(j)));
    }
    return t;
  }

  // Vertex section of a pattern: (coding blocks for slot i, then gap_i)_i,
  // preceded by gap_0. `sel` supplies the coding blocks of one slot and any
  // fences around them.
  void vertex_section(std::vector<BlockId>& p, const std::vector<BlockId>& gaps,
                      const std::function<void(std::vector<BlockId>&, int)>& sel) {
    p.push_back(gaps[0]);
    for (int i = 1; i <= kappa; ++i) {
      sel(p, i);
      p.push_back(gaps[i]);
    }
  }

  void edge_section(std::vector<BlockId>& p, BlockId head,
                    const std::vector<std::vector<BlockId>>& gaps,
                    const std::vector<std::vector<BlockId>>& sel) {
    p.push_back(head);
    for (int a = 1; a <= kappa; ++a)
      for (int b = a + 1; b <= kappa; ++b) {
        p.push_back(sel[a][b]);
        p.push_back(sel[b][a]);
        p.push_back(gaps[a][b]);
      }
  }
};

}  // namespace

ReductionOutput gen_clique_two_eq(const Graph& g, int kappa) {
  TwoEqBuilder b(g, kappa, ReductionKind::CliqueTwoEq);
  SymbolString target = b.body(/*fence=*/false, 0, 0, 0);

  std::vector<BlockId> p1{b.Z};
  b.vertex_section(p1, b.A, [&](std::vector<BlockId>& p, int i) {
    for (int j = 1; j <= kappa; ++j)
      if (j != i) p.push_back(b.X[i][j]);
  });
  p1.push_back(b.Zp);
  b.edge_section(p1, b.B0, b.B, b.Xp);

  std::vector<BlockId> p2{b.Zp};
  b.vertex_section(p2, b.A, [&](std::vector<BlockId>& p, int i) {
    for (int j = 1; j <= kappa; ++j)
      if (j != i) p.push_back(b.Xp[i][j]);
  });
  p2.push_back(b.Z);
  b.edge_section(p2, b.B0, b.B, b.X);

  b.sys.add_equation(target, std::move(p1));
  b.sys.add_equation(std::move(target), std::move(p2));
  return std::move(b.out);
}

ReductionOutput gen_clique_two_eq_empty(const Graph& g, int kappa) {
  TwoEqBuilder b(g, kappa, ReductionKind::CliqueTwoEqEmpty);
  System& sys = b.sys;
  sys.semantics = Semantics::AllowEmpty;

  SymbolId theta1 = separator(sys, g, "theta1");
  SymbolId theta2 = separator(sys, g, "theta2");
  SymbolId gamma = separator(sys, g, "gamma");
  SymbolId delta = separator(sys, g, "delta");
  SymbolId phi1 = separator(sys, g, "phi1");
  SymbolId phi2 = separator(sys, g, "phi2");
  SymbolId psi1 = separator(sys, g, "psi1");
  SymbolId psi2 = separator(sys, g, "psi2");
  SymbolId omega1 = separator(sys, g, "omega1");
  SymbolId omega2 = separator(sys, g, "omega2");
  std::vector<SymbolId> pch(2 * kappa + 1), qch(2 * kappa + 1);
  for (int j = 1; j <= 2 * kappa; ++j) {
    pch[j] = separator(sys, g, "p" + std::to_string(j));
    qch[j] = separator(sys, g, "q" + std::to_string(j));
  }

  // Targets: theta1 (p_j f_j q_j)^{2k} phi1 phi2 <fenced body>, the body
  // headed by theta2 and carrying the further anchor pairs psi1 psi2 and
  // omega1 omega2 after its two z separators. The twin target swaps every
  // pair (q_j f_j p_j, phi2 phi1, ...) and the theta heads, and is
  // otherwise identical, which matters: the vertex gaps A_i and edge gaps
  // B_* are shared between the equations, and that sharing is what stops a
  // pattern from dumping whole sections into one absorber, since the
  // absorbed chunk would have to reappear in the twin where the pairs are
  // swapped. A single swapped pair at the front is not enough once blocks
  // may be empty; the psi/omega pairs pin the blocks around both z
  // boundaries. Each fence block fills one leading slot of its own
  // equation and one vertex fence of the twin, so its slot character
  // equals its fence character (gamma opens a run, delta closes it).
  // Nesting slot j inside its pair flanks it with characters unique to
  // that pair, so an assignment drifting by one position picks up a pair
  // character that sits on the wrong side of its partner in the twin and
  // dies within a step or two, instead of re-finding a uniform filler
  // further right. Swapping the theta heads closes the remaining escape:
  // the two pattern heads each cover the leading character of their own
  // equation and the body head of the twin, so a tiling that lets early
  // blocks collapse to empty and re-derives the twin's prefix from
  // misplaced positions fails at the front anchor.
  SymbolString t1, t2;
  t1.push_back(theta1);
  t2.push_back(theta2);
  for (int j = 1; j <= 2 * kappa; ++j) {
    SymbolId slot = j % 2 == 1 ? gamma : delta;
    t1.push_back(pch[j]);
    t1.push_back(slot);
    t1.push_back(qch[j]);
    t2.push_back(qch[j]);
    t2.push_back(slot);
    t2.push_back(pch[j]);
  }
  t1.push_back(phi1);
  t1.push_back(phi2);
  t2.push_back(phi2);
  t2.push_back(phi1);
  SymbolString body1 = b.body(/*fence=*/true, theta2, gamma, delta, {psi1, psi2}, {omega1, omega2});
  SymbolString body2 = b.body(/*fence=*/true, theta1, gamma, delta, {psi2, psi1}, {omega2, omega1});
  t1.insert(t1.end(), body1.begin(), body1.end());
  t2.insert(t2.end(), body2.begin(), body2.end());

  // Gadget blocks: Gam0/Gam0' plus a fence pair per slot, and the anchor
  // pairs P_j/Q_j, Phi, Psi, Omega.
  auto gadget = [&](const std::string& name, int i, int j, bool primed) {
    BlockId blk = sys.block(name);
    b.out.roles[blk] = {Role::Gadget, i, j, primed};
    return blk;
  };
  BlockId G0 = gadget("Gam0", 0, 0, false);
  BlockId G0p = gadget("Gam0'", 0, 0, true);
  std::vector<BlockId> Gf(kappa + 1), Gb(kappa + 1), Gfp(kappa + 1), Gbp(kappa + 1);
  for (int i = 1; i <= kappa; ++i) {
    Gf[i] = gadget("Gam0_" + std::to_string(i), i, 0, false);
    Gb[i] = gadget("Gam1_" + std::to_string(i), i, 1, false);
    Gfp[i] = gadget("Gam0_" + std::to_string(i) + "'", i, 0, true);
    Gbp[i] = gadget("Gam1_" + std::to_string(i) + "'", i, 1, true);
  }
  std::vector<BlockId> P(2 * kappa + 1), Q(2 * kappa + 1);
  for (int j = 1; j <= 2 * kappa; ++j) {
    P[j] = gadget("P" + std::to_string(j), j, 3, false);
    Q[j] = gadget("Q" + std::to_string(j), j, 3, true);
  }
  BlockId P1 = gadget("Phi1", 1, 0, false);
  BlockId P2 = gadget("Phi2", 2, 0, false);
  BlockId S1 = gadget("Psi1", 1, 1, false);
  BlockId S2 = gadget("Psi2", 2, 1, false);
  BlockId O1 = gadget("Omega1", 1, 2, false);
  BlockId O2 = gadget("Omega2", 2, 2, false);

  // The gamma carriers of one pattern in prefix order: the lone fence plus
  // the open/close fence of each slot, matching the other pattern's vertex
  // section left to right.
  auto fence_row = [&](BlockId head, const std::vector<BlockId>& f,
                       const std::vector<BlockId>& bk) {
    std::vector<BlockId> row{head};
    for (int i = 1; i <= kappa; ++i) {
      row.push_back(f[i]);
      row.push_back(bk[i]);
    }
    return row;
  };
  std::vector<BlockId> row1 = fence_row(G0, Gf, Gb);
  std::vector<BlockId> row2 = fence_row(G0p, Gfp, Gbp);

  auto prefix = [&](std::vector<BlockId>& p, const std::vector<BlockId>& gam,
                    const std::vector<BlockId>& za, const std::vector<BlockId>& zb,
                    BlockId pa, BlockId pb) {
    p.push_back(gam[0]);
    for (int j = 1; j <= 2 * kappa; ++j) {
      p.push_back(za[j]);
      p.push_back(gam[j]);
      p.push_back(zb[j]);
    }
    p.push_back(pa);
    p.push_back(pb);
  };

  std::vector<BlockId> p1;
  prefix(p1, row1, P, Q, P1, P2);
  p1.push_back(b.Z);
  p1.push_back(S1);
  p1.push_back(S2);
  p1.push_back(G0p);
  b.vertex_section(p1, b.A, [&](std::vector<BlockId>& p, int i) {
    p.push_back(Gfp[i]);
    for (int j = 1; j <= kappa; ++j)
      if (j != i) p.push_back(b.X[i][j]);
    p.push_back(Gbp[i]);
  });
  p1.push_back(b.Zp);
  p1.push_back(O1);
  p1.push_back(O2);
  b.edge_section(p1, b.B0, b.B, b.Xp);

  std::vector<BlockId> p2;
  prefix(p2, row2, Q, P, P2, P1);
  p2.push_back(b.Zp);
  p2.push_back(S2);
  p2.push_back(S1);
  p2.push_back(G0);
  b.vertex_section(p2, b.A, [&](std::vector<BlockId>& p, int i) {
    p.push_back(Gf[i]);
    for (int j = 1; j <= kappa; ++j)
      if (j != i) p.push_back(b.Xp[i][j]);
    p.push_back(Gb[i]);
  });
  p2.push_back(b.Z);
  p2.push_back(O2);
  p2.push_back(O1);
  b.edge_section(p2, b.B0, b.B, b.X);

  sys.add_equation(std::move(t1), std::move(p1));
  sys.add_equation(std::move(t2), std::move(p2));
  return std::move(b.out);
}

ReductionOutput gen_mcc_size3(const Graph& g, int kappa) {
  if (kappa < 1)
    throw BadKappa("number of colors must be at least 1, got " + std::to_string(kappa));
  if (!g.colored()) throw NotColored("multicolored clique needs a vertex coloring");
  require_graph(g, kappa);
  ReductionOutput out;
  out.kind = ReductionKind::MccSize3;
  out.graph = g;
  out.kappa = kappa;
  System& sys = out.system;

  auto vsym = intern_labels(sys, g);
  SymbolId x = separator(sys, g, "x");
  SymbolId y = separator(sys, g, "y");
  SymbolId z = separator(sys, g, "z");

  // Color targets x V_i x, edge targets y e_1 y ... and z e_1 z ...
  std::vector<SymbolString> tcolor(kappa + 1);
  for (int i = 1; i <= kappa; ++i) tcolor[i].push_back(x);
  for (int v = 1; v <= g.n; ++v) tcolor[g.colors[v - 1]].push_back(vsym[v]);
  for (int i = 1; i <= kappa; ++i) tcolor[i].push_back(x);

  // Each edge is written with its lower-color endpoint first: the stitching
  // equations below place X_a right after A_{a,c} and X_c right before
  // B_{a,c}, so the occurrence of the selected edge must lead with color a.
  SymbolString ty{y}, tz{z};
  for (auto [s, t] : g.edges) {
    int lo = s, hi = t;
    if (g.colors[lo - 1] > g.colors[hi - 1]) std::swap(lo, hi);
    ty.push_back(vsym[lo]);
    ty.push_back(vsym[hi]);
    ty.push_back(y);
    tz.push_back(vsym[lo]);
    tz.push_back(vsym[hi]);
    tz.push_back(z);
  }

  std::vector<BlockId> X(kappa + 1);
  for (int i = 1; i <= kappa; ++i) {
    X[i] = sys.block("X" + std::to_string(i));
    out.roles[X[i]] = {Role::VertexSelector, i, 0, false};
  }
  auto gap = [&](int i, int j) {
    BlockId blk = sys.joker();
    out.roles[blk] = {Role::Gap, i, j, false};
    return blk;
  };
  for (int i = 1; i <= kappa; ++i)
    sys.add_equation(tcolor[i], {gap(i, 0), X[i], gap(i, 0)});
  std::vector<std::vector<BlockId>> E(kappa + 1, std::vector<BlockId>(kappa + 1, 0));
  for (int a = 1; a <= kappa; ++a)
    for (int c = a + 1; c <= kappa; ++c) {
      E[a][c] = sys.block(idx2("E", a, c));
      out.roles[E[a][c]] = {Role::EdgeSelector, a, c, false};
      sys.add_equation(ty, {gap(a, c), E[a][c], gap(a, c)});
    }
  for (int a = 1; a <= kappa; ++a)
    for (int c = a + 1; c <= kappa; ++c) {
      BlockId Aac = sys.block(idx2("A", a, c));
      BlockId Bac = sys.block(idx2("B", a, c));
      out.roles[Aac] = {Role::Gap, a, c, false};
      out.roles[Bac] = {Role::Gap, a, c, true};
      sys.add_equation(tz, {Aac, E[a][c], Bac});
      sys.add_equation(tz, {Aac, X[a], gap(a, c)});
      sys.add_equation(tz, {gap(a, c), X[c], Bac});
    }
  return out;
}

namespace {

// pre(v) = x v_1 .. v_(v-1), suf(v) = v_v .. v_n; pre(v) suf(v) is the whole
// vertex target x v_1 .. v_n.
SymbolString pre_of(const std::vector<SymbolId>& vsym, SymbolId x, int v) {
  SymbolString w{x};
  for (int u = 1; u < v; ++u) w.push_back(vsym[u]);
  return w;
}

SymbolString suf_of(const std::vector<SymbolId>& vsym, int n, int v) {
  SymbolString w;
  for (int u = v; u <= n; ++u) w.push_back(vsym[u]);
  return w;
}

}  // namespace

ReductionOutput gen_clique_mixed(const Graph& g, int kappa) {
  require_kappa(kappa);
  require_graph(g);
  ReductionOutput out;
  out.kind = ReductionKind::CliqueMixed;
  out.graph = g;
  out.kappa = kappa;
  System& sys = out.system;

  auto vsym = intern_labels(sys, g);
  SymbolId x = separator(sys, g, "x");
  SymbolId y = separator(sys, g, "y");

  SymbolString tv = pre_of(vsym, x, g.n + 1);  // x v_1 .. v_n
  SymbolString te{y};
  for (auto [s, t] : g.edges) {
    SymbolString p = pre_of(vsym, x, s), q = suf_of(vsym, g.n, t);
    te.insert(te.end(), p.begin(), p.end());
    te.insert(te.end(), q.begin(), q.end());
    te.push_back(y);
  }

  std::vector<BlockId> Xm(kappa + 1), Xs(kappa + 1);
  for (int i = 1; i <= kappa; ++i) {
    Xm[i] = sys.block("X" + std::to_string(i));
    Xs[i] = sys.block("X" + std::to_string(i) + "'");
    out.roles[Xm[i]] = {Role::VertexSelector, i, 0, false};
    out.roles[Xs[i]] = {Role::VertexSelector, i, 0, true};
  }
  for (int i = 1; i <= kappa; ++i) sys.add_equation(tv, {Xm[i], Xs[i]});

  std::vector<std::vector<BlockId>> Xc(kappa + 1, std::vector<BlockId>(kappa + 1, 0)),
      Xcp(kappa + 1, std::vector<BlockId>(kappa + 1, 0));
  for (int a = 1; a <= kappa; ++a)
    for (int b = a + 1; b <= kappa; ++b) {
      Xc[a][b] = sys.block(idx2("X", a, b));
      Xcp[b][a] = sys.block(idx2("X", b, a, true));
      out.roles[Xc[a][b]] = {Role::VertexSelector, a, b, false};
      out.roles[Xcp[b][a]] = {Role::VertexSelector, b, a, true};
      sys.add_equation(tv, {Xc[a][b], Xs[a]});
      sys.add_equation(tv, {Xm[b], Xcp[b][a]});
    }

  std::vector<BlockId> plong;
  auto gap = [&] {
    BlockId blk = sys.joker();
    out.roles[blk] = {Role::Gap};
    plong.push_back(blk);
  };
  gap();
  for (int a = 1; a <= kappa; ++a)
    for (int b = a + 1; b <= kappa; ++b) {
      plong.push_back(Xc[a][b]);
      plong.push_back(Xcp[b][a]);
      gap();
    }
  sys.add_equation(std::move(te), std::move(plong));
  return out;
}

LcsEmbedding gen_from_lcs_multi(const std::vector<std::string>& words) {
  if (words.empty()) throw Error("need at least one word");
  LcsEmbedding emb;
  System& sys = emb.system;
  BlockId X = sys.block("X");
  for (const auto& w : words) {
    if (w.empty()) throw Error("words must be non-empty");
    SymbolString t;
    for (char ch : w) t.push_back(sys.symbol(std::string(1, ch)));
    sys.add_equation(std::move(t), {X});
    emb.total_length += static_cast<int>(w.size());
  }
  emb.copies = static_cast<int>(words.size());
  return emb;
}

System gen_from_lcs_single(const std::vector<std::string>& words, int budget) {
  if (words.empty()) throw Error("need at least one word");
  if (budget < 0) throw Error("deletion budget must be non-negative");
  System sys;
  SymbolId pad = sys.symbol("$");
  SymbolString target;
  for (const auto& w : words) {
    if (w.empty()) throw Error("words must be non-empty");
    if (w.find('$') != std::string::npos)
      throw Error("words must not contain the padding symbol '$'");
    append(target, pad, budget);
    for (char ch : w) target.push_back(sys.symbol(std::string(1, ch)));
  }
  BlockId X = sys.block("X");
  sys.add_equation(std::move(target),
                   std::vector<BlockId>(words.size(), X));
  sys.deletion_budget = budget;
  return sys;
}

namespace {

bool extend_clique(const Graph& g, std::vector<int>& pick, int next, int kappa) {
  if (static_cast<int>(pick.size()) == kappa) return true;
  for (int v = next; v <= g.n; ++v) {
    bool ok = true;
    for (int u : pick)
      if (!g.adjacent(u, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    pick.push_back(v);
    if (extend_clique(g, pick, v + 1, kappa)) return true;
    pick.pop_back();
  }
  return false;
}

}  // namespace

bool clique_oracle(const Graph& g, int kappa) {
  if (kappa <= 0) return true;
  std::vector<int> pick;
  return extend_clique(g, pick, 1, kappa);
}

bool mcc_oracle(const Graph& g, int kappa) {
  if (!g.colored()) throw NotColored("multicolored clique needs a vertex coloring");
  if (kappa <= 0) return true;
  std::vector<std::vector<int>> classes(kappa + 1);
  for (int v = 1; v <= g.n; ++v) {
    int c = g.colors[v - 1];
    if (c >= 1 && c <= kappa) classes[c].push_back(v);
  }
  std::vector<int> pick;
  std::function<bool(int)> go = [&](int c) -> bool {
    if (c > kappa) return true;
    for (int v : classes[c]) {
      bool ok = true;
      for (int u : pick)
        if (!g.adjacent(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(v);
      if (go(c + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return go(1);
}

namespace {

struct Decoder {
  const ReductionOutput& out;
  const Assignment& sigma;

  const SymbolString& value_of(BlockId b) const {
    const SymbolString* v = sigma.get_if(b);
    if (!v)
      throw DecodeFailure("no value for block " + out.system.block_name(b));
    return *v;
  }

  SymbolId symbol(const std::string& name) const {
    auto id = out.system.symbols().find(name);
    if (!id) throw DecodeFailure("system has no symbol '" + name + "'");
    return *id;
  }

  // Maps a single-symbol value to its 1-based vertex index.
  int vertex_of(BlockId b) const {
    const SymbolString& v = value_of(b);
    if (v.size() != 1)
      throw DecodeFailure("block " + out.system.block_name(b) +
                          " should select one vertex symbol, has length " +
                          std::to_string(v.size()));
    const std::string& name = out.system.symbol_name(v[0]);
    for (int u = 1; u <= out.graph.n; ++u)
      if (out.graph.label(u) == name) return u;
    throw DecodeFailure("block " + out.system.block_name(b) +
                        " holds non-vertex symbol '" + name + "'");
  }

  // Maps a pre(v) value (x v_1 .. v_(v-1)) to v, checking it exactly.
  int vertex_of_prefix(BlockId b) const {
    const SymbolString& v = value_of(b);
    const int idx = static_cast<int>(v.size());
    if (idx < 1 || idx > out.graph.n)
      throw DecodeFailure("block " + out.system.block_name(b) +
                          " is not a vertex prefix");
    SymbolString expect{symbol("x")};
    for (int u = 1; u < idx; ++u) expect.push_back(symbol(out.graph.label(u)));
    if (v != expect)
      throw DecodeFailure("block " + out.system.block_name(b) +
                          " is not a vertex prefix");
    return idx;
  }

  void insert(std::set<int>& picked, int i, int vertex,
              std::map<int, int>& slot) const {
    auto [it, fresh] = slot.emplace(i, vertex);
    if (!fresh && it->second != vertex)
      throw DecodeFailure("slot " + std::to_string(i) +
                          " selects two different vertices");
    picked.insert(vertex);
  }
};

}  // namespace

std::set<int> decode(const ReductionOutput& out, const Assignment& sigma) {
  Decoder d{out, sigma};
  std::set<int> picked;
  std::map<int, int> slot;  // slot index -> vertex, to catch disagreements

  switch (out.kind) {
    case ReductionKind::CliqueSingleEq:
    case ReductionKind::CliqueTwoEq:
    case ReductionKind::CliqueTwoEqEmpty:
      for (const auto& [b, role] : out.roles)
        if (role.role == Role::VertexSelector)
          d.insert(picked, role.i, d.vertex_of(b), slot);
      break;

    case ReductionKind::MccSize3: {
      for (const auto& [b, role] : out.roles)
        if (role.role == Role::VertexSelector) {
          int v = d.vertex_of(b);
          if (out.graph.colors[v - 1] != role.i)
            throw DecodeFailure("slot " + std::to_string(role.i) +
                                " selects a vertex of color " +
                                std::to_string(out.graph.colors[v - 1]));
          d.insert(picked, role.i, v, slot);
        }
      for (const auto& [b, role] : out.roles)
        if (role.role == Role::EdgeSelector) {
          const SymbolString& v = d.value_of(b);
          SymbolId a = d.symbol(out.graph.label(slot.at(role.i)));
          SymbolId c = d.symbol(out.graph.label(slot.at(role.j)));
          if (v.size() != 2 || (v != SymbolString{a, c} && v != SymbolString{c, a}))
            throw DecodeFailure("edge block " + out.system.block_name(b) +
                                " does not join the selected vertices");
        }
      break;
    }

    case ReductionKind::CliqueMixed: {
      // Main selectors X_i carry pre(w_i); copies must agree, primed
      // selectors carry the matching suffix.
      for (const auto& [b, role] : out.roles)
        if (role.role == Role::VertexSelector && !role.primed)
          d.insert(picked, role.i, d.vertex_of_prefix(b), slot);
      for (const auto& [b, role] : out.roles)
        if (role.role == Role::VertexSelector && role.primed) {
          const SymbolString& v = d.value_of(b);
          int w = slot.at(role.i);
          SymbolString expect;
          for (int u = w; u <= out.graph.n; ++u)
            expect.push_back(d.symbol(out.graph.label(u)));
          if (v != expect)
            throw DecodeFailure("block " + out.system.block_name(b) +
                                " is not the suffix of slot " + std::to_string(role.i));
        }
      break;
    }
  }

  if (static_cast<int>(slot.size()) != out.kappa)
    throw DecodeFailure("expected " + std::to_string(out.kappa) +
                        " selected slots, found " + std::to_string(slot.size()));
  if (static_cast<int>(picked.size()) != out.kappa)
    throw DecodeFailure("selected vertices are not pairwise distinct");
  return picked;
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::CliqueSingleEq: return "clique-1eq";
    case ReductionKind::CliqueTwoEq: return "clique-2eq";
    case ReductionKind::CliqueTwoEqEmpty: return "clique-2eq-empty";
    case ReductionKind::MccSize3: return "mcc-size3";
    case ReductionKind::CliqueMixed: return "clique-mixed";
  }
  return "?";
}

std::optional<ReductionKind> kind_from_string(std::string_view name) {
  for (ReductionKind k :
       {ReductionKind::CliqueSingleEq, ReductionKind::CliqueTwoEq,
        ReductionKind::CliqueTwoEqEmpty, ReductionKind::MccSize3,
        ReductionKind::CliqueMixed})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::string to_string(Role role) {
  switch (role) {
    case Role::VertexSelector: return "vertex";
    case Role::EdgeSelector: return "edge";
    case Role::Gap: return "gap";
    case Role::Gadget: return "gadget";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view name) {
  for (Role r : {Role::VertexSelector, Role::EdgeSelector, Role::Gap, Role::Gadget})
    if (to_string(r) == name) return r;
  return std::nullopt;
}

}  // namespace streq
