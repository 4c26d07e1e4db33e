#include "pkit/barhom.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace pkit::bar {

void verify_complex(const ChainComplex& c) {
  for (int d = 1; d + 1 <= c.max_degree(); ++d) {
    if (c.dim(d - 1) == 0 || c.dim(d + 1) == 0) continue;
    if (!matmul(c.boundary[d], c.boundary[d + 1]).is_zero())
      throw NotAComplex("boundary composite nonzero at degree " + std::to_string(d + 1));
  }
}

HomologyReport homology_ranks(const ChainComplex& c) {
  verify_complex(c);
  HomologyReport rep;
  rep.weight = c.weight;
  rep.dims.resize(c.max_degree() + 1, 0);
  for (int d = 0; d <= c.max_degree(); ++d) {
    int ker = c.dim(d) - (d >= 1 ? rank(c.boundary[d]) : 0);
    int im = d + 1 <= c.max_degree() ? rank(c.boundary[d + 1]) : 0;
    rep.dims[d] = ker - im;
  }
  return rep;
}

// ---------- graded algebra bases ----------

quad::LinComb GradedBasisData::reduce(const quad::Word& w) const {
  int d = static_cast<int>(w.size());
  auto hit = index[d].find(w);
  if (hit != index[d].end()) return quad::lincomb_single(w);
  if (via_rs) return quad::normal_form(rs, w);
  auto piv = pivot_expansion[d].find(w);
  if (piv == pivot_expansion[d].end())
    throw std::logic_error("reduce: unknown word");
  return piv->second;
}

namespace {

std::vector<quad::Word> all_words(int g, int d) {
  std::vector<quad::Word> out;
  quad::Word w(d, 0);
  if (d == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(w);
    int i = d - 1;
    while (i >= 0 && w[i] == g - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

bool word_is_normal(const quad::RewriteSystem& rs, const quad::Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (rs.reducible(w[i], w[i + 1])) return false;
  return true;
}

void check_limits(int n, int rho, const Limits& lim) {
  if (rho > lim.max_weight || n > lim.max_ground)
    throw TruncationExceeded("requested (n=" + std::to_string(n) +
                             ", weight=" + std::to_string(rho) +
                             ") exceeds the configured truncation bounds");
}

struct QuotientBasis {
  std::vector<quad::Word> basis;
  std::map<quad::Word, int> index;
  std::map<quad::Word, quad::LinComb> pivot_expansion;
};

// Quotient of span(words) by the degree-d relation-ideal span, by row
// reduction. Rows whose support leaves `words` are dropped; relations stay
// within a partition class, so this restricts the span exactly when `words`
// is one class.
QuotientBasis quotient_by_ideal(const quad::QuadraticAlgebra& a, int d,
                                const std::vector<quad::Word>& words) {
  int g = a.num_generators();
  std::map<quad::Word, int> col_of;
  for (size_t i = 0; i < words.size(); ++i)
    col_of[words[i]] = static_cast<int>(i);
  RationalMatrix span(0, static_cast<int>(words.size()));
  for (int pos = 0; pos + 2 <= d; ++pos)
    for (const quad::Word& u : all_words(g, pos))
      for (int ri = 0; ri < a.relations.rows(); ++ri) {
        if (a.relations.row(ri).empty()) continue;
        for (const quad::Word& v : all_words(g, d - pos - 2)) {
          RationalMatrix::Row row;
          bool inside = true;
          for (const auto& [c, val] : a.relations.row(ri)) {
            quad::Word w = u;
            w.push_back(c / g);
            w.push_back(c % g);
            w.insert(w.end(), v.begin(), v.end());
            auto hit = col_of.find(w);
            if (hit == col_of.end()) {
              inside = false;
              break;
            }
            row.emplace_back(hit->second, val);
          }
          if (inside) span.append_row(row);
        }
      }
  RrefResult rr = rref(span);
  QuotientBasis out;
  std::vector<bool> pivot(words.size(), false);
  for (int c : rr.pivots) pivot[c] = true;
  for (size_t i = 0; i < words.size(); ++i)
    if (!pivot[i]) {
      out.index[words[i]] = static_cast<int>(out.basis.size());
      out.basis.push_back(words[i]);
    }
  for (size_t k = 0; k < rr.pivots.size(); ++k) {
    quad::LinComb exp;
    for (const auto& [c, val] : rr.matrix.row(static_cast<int>(k)))
      if (c != rr.pivots[k]) exp.push_back({words[c], -val});
    std::sort(exp.begin(), exp.end(),
              [](const quad::Term& x, const quad::Term& y) { return x.word < y.word; });
    out.pivot_expansion[words[rr.pivots[k]]] = std::move(exp);
  }
  return out;
}

}  // namespace

GradedBasisData make_graded_basis(const quad::QuadraticAlgebra& a, int max_degree) {
  GradedBasisData gb;
  gb.algebra = a;
  int g = a.num_generators();
  for (const quad::MonomialOrder& o :
       {quad::identity_order(g), quad::reversed_order(g)}) {
    quad::RewriteSystem rs = quad::derive_rewrite_system(a, o);
    if (quad::check_confluence(rs).confluent) {
      gb.via_rs = true;
      gb.rs = rs;
      break;
    }
  }
  gb.words.resize(max_degree + 1);
  gb.index.resize(max_degree + 1);
  gb.pivot_expansion.resize(max_degree + 1);
  for (int d = 0; d <= max_degree; ++d) {
    double size = 1;
    for (int i = 0; i < d; ++i) size *= g;
    if (size > 2e6)
      throw quad::DimensionsUnavailable("degree-" + std::to_string(d) +
                                        " word space too large");
    std::vector<quad::Word> words = all_words(g, d);
    if (gb.via_rs) {
      for (const quad::Word& w : words)
        if (word_is_normal(gb.rs, w)) {
          gb.index[d][w] = static_cast<int>(gb.words[d].size());
          gb.words[d].push_back(w);
        }
      continue;
    }
    // ideal-span route: rref the degree-d span, basis = non-pivot words
    QuotientBasis qb = quotient_by_ideal(a, d, words);
    gb.words[d] = std::move(qb.basis);
    gb.index[d] = std::move(qb.index);
    gb.pivot_expansion[d] = std::move(qb.pivot_expansion);
  }
  return gb;
}

// ---------- algebra bar complex ----------

namespace {

std::string tensor_label(const std::vector<quad::Word>& factors,
                         const std::vector<std::string>& gens) {
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "|";
    s += quad::word_str(factors[i], gens);
  }
  return s;
}

struct TensorBasis {
  std::vector<std::vector<std::vector<quad::Word>>> elems;  // per degree
  std::vector<std::map<std::string, int>> index;
};

// p-fold tensors of positive-degree basis words, total weight rho, optionally
// filtered; ordered lexicographically by serialized label.
TensorBasis tensor_basis(const GradedBasisData& gb, int rho,
                         const std::function<bool(const std::vector<quad::Word>&)>& keep) {
  TensorBasis tb;
  tb.elems.resize(rho + 1);
  tb.index.resize(rho + 1);
  for (int p = 1; p <= rho; ++p) {
    std::vector<std::pair<std::string, std::vector<quad::Word>>> collected;
    std::vector<quad::Word> cur;
    std::function<void(int)> rec = [&](int left) {
      int slots = p - static_cast<int>(cur.size());
      if (slots == 0) {
        if (left == 0 && (!keep || keep(cur)))
          collected.emplace_back(tensor_label(cur, gb.algebra.generators), cur);
        return;
      }
      for (int w = 1; w + (slots - 1) <= left; ++w)
        for (const quad::Word& bw : gb.words[w]) {
          cur.push_back(bw);
          rec(left - w);
          cur.pop_back();
        }
    };
    rec(rho);
    std::sort(collected.begin(), collected.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, factors] : collected) {
      tb.index[p][key] = static_cast<int>(tb.elems[p].size());
      tb.elems[p].push_back(std::move(factors));
    }
  }
  return tb;
}

ChainComplex bar_complex_from(const GradedBasisData& gb, const TensorBasis& tb,
                              int rho) {
  ChainComplex c;
  c.weight = rho;
  c.labels.resize(rho + 1);
  c.boundary.resize(rho + 1);
  for (int p = 1; p <= rho; ++p)
    for (const auto& factors : tb.elems[p])
      c.labels[p].push_back(tensor_label(factors, gb.algebra.generators));
  c.boundary[0] = RationalMatrix(0, c.dim(0));
  for (int p = 1; p <= rho; ++p) {
    RationalMatrix d(c.dim(p - 1), c.dim(p));
    for (int e = 0; e < c.dim(p); ++e) {
      const auto& factors = tb.elems[p][e];
      for (int i = 0; i + 1 < p; ++i) {
        quad::Word prod = factors[i];
        prod.insert(prod.end(), factors[i + 1].begin(), factors[i + 1].end());
        quad::LinComb red = gb.reduce(prod);
        int sign = (i % 2 == 0) ? 1 : -1;
        for (const quad::Term& t : red) {
          std::vector<quad::Word> nf;
          for (int k = 0; k < p; ++k) {
            if (k == i + 1) continue;
            nf.push_back(k == i ? t.word : factors[k]);
          }
          auto it = tb.index[p - 1].find(tensor_label(nf, gb.algebra.generators));
          if (it == tb.index[p - 1].end())
            throw std::logic_error("bar differential left the basis");
          Rational cur = d.at(it->second, e);
          d.set(it->second, e, cur + (sign > 0 ? t.coeff : -t.coeff));
        }
      }
    }
    c.boundary[p] = std::move(d);
  }
  return c;
}

}  // namespace

ChainComplex bar_alg_complex(const quad::QuadraticAlgebra& a, int rho,
                             const Limits& lim) {
  check_limits(1, rho, lim);
  GradedBasisData gb = make_graded_basis(a, rho);
  TensorBasis tb = tensor_basis(gb, rho, nullptr);
  return bar_complex_from(gb, tb, rho);
}

walls::Partition partition_split(const proto::LabeledAlgebra& A,
                                 const std::vector<quad::Word>& factors) {
  int n = A.n;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const quad::Word& w : factors)
    for (int gid : w) {
      auto [i, j] = A.gen_pair[gid];
      parent[find(i)] = find(j);
    }
  std::map<int, std::vector<int>> blocks;
  for (int e = 1; e <= n; ++e) blocks[find(e)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& [root, blk] : blocks) out.push_back(std::move(blk));
  return walls::make_partition(std::move(out));
}

ChainComplex connected_bar_component(const proto::LabeledAlgebra& A, int rho,
                                     const Limits& lim) {
  check_limits(A.n, rho, lim);
  GradedBasisData gb = make_graded_basis(A.algebra, rho);
  auto keep = [&](const std::vector<quad::Word>& factors) {
    return partition_split(A, factors).blocks.size() == 1;
  };
  TensorBasis tb = tensor_basis(gb, rho, keep);
  return bar_complex_from(gb, tb, rho);
}

// ---------- weight components of the protoperad ----------

namespace {

int pos_in(const walls::Brick& sorted, int element) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), element);
  if (it == sorted.end() || *it != element)
    throw std::logic_error("element not in support");
  return static_cast<int>(it - sorted.begin()) + 1;  // 1-based
}

// P^[w](1..s): the connected direct summand of A(P,s)_w, with a reduction
// map onto a chosen word basis.
struct Component {
  int w = 0, s = 0;
  std::vector<quad::Word> basis;  // words over A(P,s) generators
  std::map<quad::Word, int> index;
  bool via_rs = false;
  std::map<quad::Word, quad::LinComb> pivot_expansion;
};

struct WeightComponents {
  const proto::BinaryQuadraticProtoperad* p = nullptr;
  std::map<int, proto::LabeledAlgebra> algebra;      // per s
  std::map<int, quad::RewriteSystem> rs;             // per s, when confluent
  std::map<int, bool> rs_ok;
  std::map<std::pair<int, int>, Component> comp;

  explicit WeightComponents(const proto::BinaryQuadraticProtoperad& pp) : p(&pp) {}

  const proto::LabeledAlgebra& alg(int s) {
    auto it = algebra.find(s);
    if (it != algebra.end()) return it->second;
    auto [pos, ignore] = algebra.emplace(s, proto::build_algebra(*p, s));
    const proto::LabeledAlgebra& A = pos->second;
    int g = A.algebra.num_generators();
    bool ok = false;
    for (const quad::MonomialOrder& o :
         {quad::identity_order(g), quad::reversed_order(g)}) {
      quad::RewriteSystem sys = quad::derive_rewrite_system(A.algebra, o);
      if (quad::check_confluence(sys).confluent) {
        rs[s] = sys;
        ok = true;
        break;
      }
    }
    rs_ok[s] = ok;
    return A;
  }

  bool connected_word(const proto::LabeledAlgebra& A, const quad::Word& w) {
    return partition_split(A, {w}).blocks.size() == 1;
  }

  const Component& get(int w, int s) {
    auto key = std::make_pair(w, s);
    auto it = comp.find(key);
    if (it != comp.end()) return it->second;
    Component c;
    c.w = w;
    c.s = s;
    if (s >= 2 && s <= w + 1) {
      const proto::LabeledAlgebra& A = alg(s);
      int g = A.algebra.num_generators();
      std::vector<quad::Word> words = all_words(g, w);
      std::vector<quad::Word> cls;
      for (const quad::Word& word : words)
        if (connected_word(A, word)) cls.push_back(word);
      if (rs_ok[s]) {
        c.via_rs = true;
        const quad::RewriteSystem& sys = rs.at(s);
        for (const quad::Word& word : cls)
          if (word_is_normal(sys, word)) {
            c.index[word] = static_cast<int>(c.basis.size());
            c.basis.push_back(word);
          }
      } else {
        QuotientBasis qb = quotient_by_ideal(A.algebra, w, cls);
        c.basis = std::move(qb.basis);
        c.index = std::move(qb.index);
        c.pivot_expansion = std::move(qb.pivot_expansion);
      }
    }
    return comp.emplace(key, std::move(c)).first->second;
  }

  // reduce a word (over A(P,s) generators) to component coordinates
  std::vector<std::pair<int, Rational>> reduce(int w, int s, const quad::Word& word) {
    const Component& c = get(w, s);
    std::vector<std::pair<int, Rational>> out;
    if (c.via_rs) {
      quad::LinComb nf = quad::normal_form(rs.at(s), word);
      for (const quad::Term& t : nf) out.emplace_back(c.index.at(t.word), t.coeff);
      return out;
    }
    auto hit = c.index.find(word);
    if (hit != c.index.end()) {
      out.emplace_back(hit->second, Rational(1));
      return out;
    }
    auto piv = c.pivot_expansion.find(word);
    if (piv == c.pivot_expansion.end())
      throw std::logic_error("component reduce: word outside the class span");
    for (const quad::Term& t : piv->second)
      out.emplace_back(c.index.at(t.word), t.coeff);
    return out;
  }

  // word of a labeled brick, relabeled into the coordinates of dst_support
  quad::Word relabel(int w, const walls::Brick& src_support, int label,
                     const walls::Brick& dst_support) {
    const Component& c = get(w, static_cast<int>(src_support.size()));
    const proto::LabeledAlgebra& src = alg(static_cast<int>(src_support.size()));
    const proto::LabeledAlgebra& dst = alg(static_cast<int>(dst_support.size()));
    quad::Word out;
    for (int gid : c.basis[label]) {
      auto [a, b] = src.gen_pair[gid];
      int ga = pos_in(dst_support, src_support[a - 1]);
      int gb2 = pos_in(dst_support, src_support[b - 1]);
      out.push_back(dst.gen_id(std::min(ga, gb2), std::max(ga, gb2),
                               src.gen_nu[gid]));
    }
    return out;
  }

  // human-readable label of a brick element, in global coordinates
  std::string brick_label(int w, const walls::Brick& support, int label) {
    const Component& c = get(w, static_cast<int>(support.size()));
    const proto::LabeledAlgebra& A = alg(static_cast<int>(support.size()));
    std::string s = "{";
    for (size_t i = 0; i < support.size(); ++i)
      s += (i ? "," : "") + std::to_string(support[i]);
    s += "}:";
    const quad::Word& word = c.basis[label];
    for (size_t i = 0; i < word.size(); ++i) {
      auto [a, b] = A.gen_pair[word[i]];
      if (i) s += ".";
      s += p->generators[A.gen_nu[word[i]]].name + "_" +
           std::to_string(support[a - 1]) + "_" + std::to_string(support[b - 1]);
    }
    return s;
  }
};

int parity(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

walls::Brick union_sorted(const walls::Brick& a, const walls::Brick& b) {
  walls::Brick u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

// ---------- protoperadic bar ----------

struct ProtoElem {
  walls::Wall wall;
  std::vector<int> weight;  // per brick, canonical brick order
  std::vector<int> label;
};

std::string proto_key(const ProtoElem& e) {
  std::ostringstream os;
  os << walls::wall_key(e.wall) << "#w";
  for (int w : e.weight) os << w << ",";
  os << "#l";
  for (int l : e.label) os << l << ",";
  return os.str();
}

struct ProtoBasis {
  std::vector<std::vector<ProtoElem>> elems;  // per degree (brick count)
  std::vector<std::map<std::string, int>> index;
};

ProtoBasis proto_basis(WeightComponents& wc, int n, int rho) {
  ProtoBasis pb;
  pb.elems.resize(rho + 1);
  pb.index.resize(rho + 1);
  for (int r = 1; r <= rho; ++r) {
    int max_size = std::min(n, rho - r + 2);
    std::set<int> sizes;
    for (int s = 2; s <= max_size; ++s) sizes.insert(s);
    if (sizes.empty()) continue;
    std::vector<std::pair<std::string, ProtoElem>> collected;
    for (const walls::Wall& w : walls::enum_walls(n, r, sizes)) {
      // weights: w_b >= max(1, |b|-1), sum = rho
      std::vector<int> weight(r), label(r);
      std::function<void(int)> assign_label = [&](int k) {
        if (k == r) {
          ProtoElem e{w, weight, label};
          collected.emplace_back(proto_key(e), std::move(e));
          return;
        }
        const Component& c =
            wc.get(weight[k], static_cast<int>(w.bricks[k].size()));
        for (int l = 0; l < static_cast<int>(c.basis.size()); ++l) {
          label[k] = l;
          assign_label(k + 1);
        }
      };
      std::function<void(int, int)> assign_weight = [&](int k, int left) {
        if (k == r) {
          if (left == 0) assign_label(0);
          return;
        }
        int lo = std::max<int>(1, static_cast<int>(w.bricks[k].size()) - 1);
        for (int wt = lo; wt <= left - (r - 1 - k); ++wt) {
          weight[k] = wt;
          assign_weight(k + 1, left - wt);
        }
      };
      assign_weight(0, rho);
    }
    std::sort(collected.begin(), collected.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, e] : collected) {
      pb.index[r][key] = static_cast<int>(pb.elems[r].size());
      pb.elems[r].push_back(std::move(e));
    }
  }
  return pb;
}

std::string proto_label(WeightComponents& wc, const ProtoElem& e) {
  std::string s = walls::wall_key(e.wall) + " ";
  for (int k = 0; k < e.wall.size(); ++k) {
    if (k) s += " | ";
    s += wc.brick_label(e.weight[k], e.wall.bricks[k], e.label[k]);
  }
  return s;
}

// contraction terms of one basis element: (target key, coefficient)
void proto_boundary_terms(
    WeightComponents& wc, int n, const ProtoElem& e,
    const std::function<void(const ProtoElem&, const Rational&)>& emit) {
  const walls::Wall& w = e.wall;
  int r = w.size();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      if (!w.covers(i, j)) continue;
      walls::Brick u = union_sorted(w.bricks[i], w.bricks[j]);
      if (static_cast<int>(u.size()) ==
          static_cast<int>(w.bricks[i].size() + w.bricks[j].size()))
        continue;  // disjoint pair; not an admissible contraction
      int wu = e.weight[i] + e.weight[j];
      // bottom word then top word, in the merged coordinates
      quad::Word prod = wc.relabel(e.weight[i], w.bricks[i], e.label[i], u);
      quad::Word top = wc.relabel(e.weight[j], w.bricks[j], e.label[j], u);
      prod.insert(prod.end(), top.begin(), top.end());
      auto red = wc.reduce(wu, static_cast<int>(u.size()), prod);
      if (red.empty()) continue;

      // produced sequence: bricks with j removed and i replaced by the merge
      std::vector<walls::Brick> pb;
      std::vector<int> pw, origin;  // origin: original index, -1 for merge
      for (int k = 0; k < r; ++k) {
        if (k == j) continue;
        if (k == i) {
          pb.push_back(u);
          pw.push_back(wu);
          origin.push_back(-1);
        } else {
          pb.push_back(w.bricks[k]);
          pw.push_back(e.weight[k]);
          origin.push_back(k);
        }
      }
      std::vector<std::pair<int, int>> pairs;
      auto orig_less = [&](int a, int b) {
        auto reps = [&](int x) {
          return x >= 0 ? std::vector<int>{x} : std::vector<int>{i, j};
        };
        for (int xa : reps(a))
          for (int xb : reps(b))
            if (w.less(xa, xb)) return true;
        return false;
      };
      for (int a = 0; a < static_cast<int>(pb.size()); ++a)
        for (int b = 0; b < static_cast<int>(pb.size()); ++b)
          if (a != b && orig_less(origin[a], origin[b])) pairs.emplace_back(a, b);
      std::vector<int> perm;
      walls::Wall tw = walls::make_wall_perm(n, pb, pairs, &perm);

      int sign = ((j - 1) % 2 == 0 ? 1 : -1) * parity(perm);
      for (const auto& [lu, coeff] : red) {
        ProtoElem t;
        t.wall = tw;
        t.weight.resize(perm.size());
        t.label.resize(perm.size());
        for (size_t k = 0; k < perm.size(); ++k) {
          int src = perm[k];
          t.weight[k] = pw[src];
          t.label[k] = origin[src] >= 0 ? e.label[origin[src]] : lu;
        }
        emit(t, sign > 0 ? coeff : -coeff);
      }
    }
}

ChainComplex proto_complex_from(WeightComponents& wc, const ProtoBasis& pb, int n,
                                int rho) {
  ChainComplex c;
  c.weight = rho;
  c.labels.resize(rho + 1);
  c.boundary.resize(rho + 1);
  for (int r = 1; r <= rho; ++r)
    for (const ProtoElem& e : pb.elems[r]) c.labels[r].push_back(proto_label(wc, e));
  c.boundary[0] = RationalMatrix(0, c.dim(0));
  for (int r = 1; r <= rho; ++r) {
    RationalMatrix d(c.dim(r - 1), c.dim(r));
    for (int col = 0; col < c.dim(r); ++col) {
      proto_boundary_terms(wc, n, pb.elems[r][col],
                           [&](const ProtoElem& t, const Rational& coeff) {
                             auto it = pb.index[r - 1].find(proto_key(t));
                             if (it == pb.index[r - 1].end())
                               throw std::logic_error(
                                   "proto differential left the basis");
                             Rational cur = d.at(it->second, col);
                             d.set(it->second, col, cur + coeff);
                           });
    }
    c.boundary[r] = std::move(d);
  }
  return c;
}

// ---------- normalized simplicial bar ----------

struct LevElem {
  walls::LeveledWall lw;
  std::vector<std::vector<int>> weight;  // aligned with lw.levels
  std::vector<std::vector<int>> label;
};

std::string lev_key(const LevElem& e) {
  std::ostringstream os;
  os << walls::leveled_wall_key(e.lw) << "#w";
  for (const auto& lv : e.weight) {
    for (int w : lv) os << w << ",";
    os << ";";
  }
  os << "#l";
  for (const auto& lv : e.label) {
    for (int l : lv) os << l << ",";
    os << ";";
  }
  return os.str();
}

struct LevBasis {
  std::vector<std::vector<LevElem>> elems;  // per degree (level count)
  std::vector<std::map<std::string, int>> index;
};

LevBasis lev_basis(WeightComponents& wc, int n, int rho) {
  LevBasis lb;
  lb.elems.resize(rho + 1);
  lb.index.resize(rho + 1);
  std::set<int> sizes;
  for (int s = 2; s <= std::min(n, rho + 1); ++s) sizes.insert(s);
  if (sizes.empty()) return lb;
  for (int p = 1; p <= rho; ++p) {
    std::vector<std::pair<std::string, LevElem>> collected;
    for (int b = p; b <= rho; ++b)
      for (const walls::LeveledWall& lw : walls::enum_leveled_walls(n, p, b, sizes)) {
        // flatten bricks level-major
        std::vector<std::pair<int, int>> slots;  // (level, position)
        std::vector<const walls::Brick*> bricks;
        for (size_t l = 0; l < lw.levels.size(); ++l)
          for (size_t q = 0; q < lw.levels[l].size(); ++q) {
            slots.emplace_back(static_cast<int>(l), static_cast<int>(q));
            bricks.push_back(&lw.levels[l][q]);
          }
        int nb = static_cast<int>(bricks.size());
        std::vector<int> weight(nb), label(nb);
        std::function<void(int)> assign_label = [&](int k) {
          if (k == nb) {
            LevElem e;
            e.lw = lw;
            e.weight.resize(lw.levels.size());
            e.label.resize(lw.levels.size());
            for (size_t l = 0; l < lw.levels.size(); ++l) {
              e.weight[l].resize(lw.levels[l].size());
              e.label[l].resize(lw.levels[l].size());
            }
            for (int t = 0; t < nb; ++t) {
              e.weight[slots[t].first][slots[t].second] = weight[t];
              e.label[slots[t].first][slots[t].second] = label[t];
            }
            collected.emplace_back(lev_key(e), std::move(e));
            return;
          }
          const Component& c = wc.get(weight[k], static_cast<int>(bricks[k]->size()));
          for (int l = 0; l < static_cast<int>(c.basis.size()); ++l) {
            label[k] = l;
            assign_label(k + 1);
          }
        };
        std::function<void(int, int)> assign_weight = [&](int k, int left) {
          if (k == nb) {
            if (left == 0) assign_label(0);
            return;
          }
          int lo = std::max<int>(1, static_cast<int>(bricks[k]->size()) - 1);
          for (int wt = lo; wt <= left - (nb - 1 - k); ++wt) {
            weight[k] = wt;
            assign_weight(k + 1, left - wt);
          }
        };
        assign_weight(0, rho);
      }
    std::sort(collected.begin(), collected.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, e] : collected) {
      lb.index[p][key] = static_cast<int>(lb.elems[p].size());
      lb.elems[p].push_back(std::move(e));
    }
  }
  return lb;
}

std::string lev_label(WeightComponents& wc, const LevElem& e) {
  std::string s;
  for (size_t l = 0; l < e.lw.levels.size(); ++l) {
    if (l) s += " || ";
    for (size_t q = 0; q < e.lw.levels[l].size(); ++q) {
      if (q) s += " ";
      s += wc.brick_label(e.weight[l][q], e.lw.levels[l][q], e.label[l][q]);
    }
  }
  return s;
}

// merge of levels li and li+1 (0-based); emits the resulting basis terms
void lev_merge_terms(WeightComponents& wc, const LevElem& e, int li,
                     const std::function<void(const LevElem&, const Rational&)>& emit) {
  struct Member {
    walls::Brick brick;
    int weight, label;
    bool lower;
  };
  std::vector<Member> members;
  for (int round = 0; round < 2; ++round) {
    int l = li + round;
    for (size_t q = 0; q < e.lw.levels[l].size(); ++q)
      members.push_back({e.lw.levels[l][q], e.weight[l][q], e.label[l][q],
                         round == 0});
  }
  int nm = static_cast<int>(members.size());
  std::vector<int> parent(nm);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto share = [](const walls::Brick& a, const walls::Brick& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      if (a[i] < b[j])
        ++i;
      else
        ++j;
    }
    return false;
  };
  for (int i = 0; i < nm; ++i)
    for (int j = i + 1; j < nm; ++j)
      if (share(members[i].brick, members[j].brick)) parent[find(i)] = find(j);

  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < nm; ++i) comps[find(i)].push_back(i);

  // per component: list of (brick, weight, label, coeff) alternatives
  struct Alt {
    walls::Brick brick;
    int weight, label;
    Rational coeff;
  };
  std::vector<std::vector<Alt>> options;
  for (auto& [root, mem] : comps) {
    if (mem.size() == 1) {
      const Member& m = members[mem[0]];
      options.push_back({{m.brick, m.weight, m.label, Rational(1)}});
      continue;
    }
    walls::Brick u;
    int wu = 0;
    for (int idx : mem) {
      u = union_sorted(u, members[idx].brick);
      wu += members[idx].weight;
    }
    quad::Word prod;
    for (int round = 0; round < 2; ++round)
      for (int idx : mem) {
        const Member& m = members[idx];
        if (m.lower != (round == 0)) continue;
        quad::Word part = wc.relabel(m.weight, m.brick, m.label, u);
        prod.insert(prod.end(), part.begin(), part.end());
      }
    auto red = wc.reduce(wu, static_cast<int>(u.size()), prod);
    std::vector<Alt> alts;
    for (const auto& [lu, coeff] : red) alts.push_back({u, wu, lu, coeff});
    options.push_back(std::move(alts));
  }

  // cartesian product over components
  std::vector<int> pick(options.size(), 0);
  std::function<void(size_t, Rational)> rec = [&](size_t k, Rational coeff) {
    if (is_zero(coeff)) return;
    if (k == options.size()) {
      struct Slot {
        walls::Brick brick;
        int weight, label;
      };
      std::vector<Slot> merged;
      for (size_t t = 0; t < options.size(); ++t) {
        const Alt& a = options[t][pick[t]];
        merged.push_back({a.brick, a.weight, a.label});
      }
      std::sort(merged.begin(), merged.end(), [](const Slot& x, const Slot& y) {
        return x.brick.front() < y.brick.front();
      });
      LevElem t;
      for (size_t l = 0; l < e.lw.levels.size(); ++l) {
        if (static_cast<int>(l) == li + 1) continue;
        if (static_cast<int>(l) == li) {
          std::vector<walls::Brick> bricks;
          std::vector<int> ws, ls;
          for (const Slot& s : merged) {
            bricks.push_back(s.brick);
            ws.push_back(s.weight);
            ls.push_back(s.label);
          }
          t.lw.levels.push_back(std::move(bricks));
          t.weight.push_back(std::move(ws));
          t.label.push_back(std::move(ls));
        } else {
          t.lw.levels.push_back(e.lw.levels[l]);
          t.weight.push_back(e.weight[l]);
          t.label.push_back(e.label[l]);
        }
      }
      emit(t, coeff);
      return;
    }
    for (size_t o = 0; o < options[k].size(); ++o) {
      pick[k] = static_cast<int>(o);
      rec(k + 1, coeff * options[k][o].coeff);
    }
  };
  for (const auto& opt : options)
    if (opt.empty()) return;  // product vanished
  rec(0, Rational(1));
}

ChainComplex lev_complex_from(WeightComponents& wc, const LevBasis& lb, int rho) {
  ChainComplex c;
  c.weight = rho;
  c.labels.resize(rho + 1);
  c.boundary.resize(rho + 1);
  for (int p = 1; p <= rho; ++p)
    for (const LevElem& e : lb.elems[p]) c.labels[p].push_back(lev_label(wc, e));
  c.boundary[0] = RationalMatrix(0, c.dim(0));
  for (int p = 1; p <= rho; ++p) {
    RationalMatrix d(c.dim(p - 1), c.dim(p));
    for (int col = 0; col < c.dim(p); ++col) {
      const LevElem& e = lb.elems[p][col];
      for (int li = 0; li + 1 < p; ++li) {
        Rational sign = (li % 2 == 0) ? 1 : -1;
        lev_merge_terms(wc, e, li,
                        [&](const LevElem& t, const Rational& coeff) {
                          auto it = lb.index[p - 1].find(lev_key(t));
                          if (it == lb.index[p - 1].end())
                            throw std::logic_error(
                                "normalized bar differential left the basis");
                          Rational cur = d.at(it->second, col);
                          d.set(it->second, col, cur + sign * coeff);
                        });
      }
    }
    c.boundary[p] = std::move(d);
  }
  return c;
}

}  // namespace

ChainComplex normalized_bar_complex(const proto::BinaryQuadraticProtoperad& p,
                                    int n, int rho, const Limits& lim) {
  check_limits(n, rho, lim);
  WeightComponents wc(p);
  LevBasis lb = lev_basis(wc, n, rho);
  return lev_complex_from(wc, lb, rho);
}

ChainComplex proto_bar_complex(const proto::BinaryQuadraticProtoperad& p, int n,
                               int rho, const Limits& lim) {
  check_limits(n, rho, lim);
  WeightComponents wc(p);
  ProtoBasis pb = proto_basis(wc, n, rho);
  return proto_complex_from(wc, pb, n, rho);
}

RationalMatrix proto_bar_differential(const proto::BinaryQuadraticProtoperad& p,
                                      int n, int rho) {
  WeightComponents wc(p);
  ProtoBasis pb = proto_basis(wc, n, rho);
  int src = static_cast<int>(pb.elems[rho].size());
  int dst = rho >= 2 ? static_cast<int>(pb.elems[rho - 1].size()) : 0;
  RationalMatrix d(dst, src);
  if (rho >= 2)
    for (int col = 0; col < src; ++col)
      proto_boundary_terms(wc, n, pb.elems[rho][col],
                           [&](const ProtoElem& t, const Rational& coeff) {
                             auto it = pb.index[rho - 1].find(proto_key(t));
                             if (it == pb.index[rho - 1].end())
                               throw std::logic_error(
                                   "proto differential left the basis");
                             Rational cur = d.at(it->second, col);
                             d.set(it->second, col, cur + coeff);
                           });
  return d;
}

std::vector<RationalMatrix> levelization_maps(
    const proto::BinaryQuadraticProtoperad& p, int n, int rho, const Limits& lim) {
  check_limits(n, rho, lim);
  WeightComponents wc(p);
  ProtoBasis pb = proto_basis(wc, n, rho);
  LevBasis lb = lev_basis(wc, n, rho);
  std::vector<RationalMatrix> maps(rho + 1);
  maps[0] = RationalMatrix(0, 0);
  for (int r = 1; r <= rho; ++r) {
    RationalMatrix E(static_cast<int>(lb.elems[r].size()),
                     static_cast<int>(pb.elems[r].size()));
    for (int col = 0; col < static_cast<int>(pb.elems[r].size()); ++col) {
      const ProtoElem& e = pb.elems[r][col];
      for (const std::vector<int>& ext : walls::linear_extensions(e.wall)) {
        LevElem t;
        for (int k = 0; k < r; ++k) {
          t.lw.levels.push_back({e.wall.bricks[ext[k]]});
          t.weight.push_back({e.weight[ext[k]]});
          t.label.push_back({e.label[ext[k]]});
        }
        auto it = lb.index[r].find(lev_key(t));
        if (it == lb.index[r].end())
          throw std::logic_error("levelization left the basis");
        Rational cur = E.at(it->second, col);
        E.set(it->second, col, cur + Rational(parity(ext)));
      }
    }
    maps[r] = std::move(E);
  }
  return maps;
}

RationalMatrix levelization_matrix(const proto::BinaryQuadraticProtoperad& p,
                                   int n, int rho) {
  return levelization_maps(p, n, rho).at(rho);
}

}  // namespace pkit::bar
