#include "pkit/walls.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pkit::walls {

namespace {

constexpr int kMaxBricks = 63;

bool share_element(const Brick& a, const Brick& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

void check_bricks(int n, const std::vector<Brick>& bricks) {
  std::vector<bool> seen(n + 1, false);
  for (const Brick& b : bricks) {
    if (b.empty()) throw std::invalid_argument("empty brick");
    if (!std::is_sorted(b.begin(), b.end()) ||
        std::adjacent_find(b.begin(), b.end()) != b.end())
      throw std::invalid_argument("brick not a sorted set");
    for (int e : b) {
      if (e < 1 || e > n) throw std::invalid_argument("brick element out of range");
      seen[e] = true;
    }
  }
  for (int e = 1; e <= n; ++e)
    if (!seen[e]) throw std::invalid_argument("bricks do not cover the ground set");
}

// Transitive closure of the given strict relation, as bitmasks.
std::vector<std::uint64_t> closure(int r,
                                   const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::uint64_t> below(r, 0);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= r || b < 0 || b >= r)
      throw std::invalid_argument("order pair index out of range");
    below[a] |= (std::uint64_t{1} << b);
  }
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      if ((below[i] >> k) & 1u) below[i] |= below[k];
  return below;
}

}  // namespace

Partition make_partition(std::vector<Brick> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const Brick& a, const Brick& b) { return a.front() < b.front(); });
  return Partition{std::move(blocks)};
}

bool Wall::covers(int i, int j) const {
  if (!less(i, j)) return false;
  // nothing strictly between
  std::uint64_t between = below[i] & ~(std::uint64_t{1} << j);
  for (int k = 0; k < size(); ++k)
    if (((between >> k) & 1u) && less(k, j)) return false;
  return true;
}

std::vector<std::pair<int, int>> Wall::cover_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (covers(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<int> Wall::min_levels() const {
  int r = size();
  std::vector<int> level(r, 0);
  // longest chain strictly below each brick; bricks in canonical order are
  // already topologically sorted, but recompute robustly
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (less(i, j) && level[j] < level[i] + 1) {
          level[j] = level[i] + 1;
          changed = true;
        }
  }
  return level;
}

Wall make_wall(int n, std::vector<Brick> bricks,
               const std::vector<std::pair<int, int>>& below_pairs) {
  return make_wall_perm(n, std::move(bricks), below_pairs, nullptr);
}

Wall make_wall_perm(int n, std::vector<Brick> bricks,
                    const std::vector<std::pair<int, int>>& below_pairs,
                    std::vector<int>* perm_out) {
  int r = static_cast<int>(bricks.size());
  if (r == 0) throw std::invalid_argument("wall needs at least one brick");
  if (r > kMaxBricks) throw std::invalid_argument("too many bricks");
  for (auto& b : bricks) std::sort(b.begin(), b.end());
  check_bricks(n, bricks);

  std::vector<std::uint64_t> c0 = closure(r, below_pairs);
  for (int i = 0; i < r; ++i)
    if ((c0[i] >> i) & 1u) throw std::invalid_argument("cyclic vertical order");

  // The canonical order is generated by the restriction to bricks that share
  // an element; constraints between disjoint bricks carry no wall data.
  std::vector<std::pair<int, int>> shared;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && ((c0[i] >> j) & 1u) && share_element(bricks[i], bricks[j]))
        shared.emplace_back(i, j);
  std::vector<std::uint64_t> below = closure(r, shared);

  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (share_element(bricks[i], bricks[j]) && !((below[i] >> j) & 1u) &&
          !((below[j] >> i) & 1u))
        throw std::invalid_argument("bricks sharing an element are incomparable");

  // canonical numbering
  Wall tmp{bricks, below};
  std::vector<int> level = tmp.min_levels();
  std::vector<int> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (level[a] != level[b]) return level[a] < level[b];
    if (bricks[a].front() != bricks[b].front())
      return bricks[a].front() < bricks[b].front();
    return bricks[a] < bricks[b];
  });
  std::vector<int> pos(r);
  for (int k = 0; k < r; ++k) pos[perm[k]] = k;

  Wall w;
  w.bricks.resize(r);
  w.below.assign(r, 0);
  for (int k = 0; k < r; ++k) w.bricks[k] = bricks[perm[k]];
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if ((below[i] >> j) & 1u) w.below[pos[i]] |= (std::uint64_t{1} << pos[j]);
  if (perm_out) *perm_out = perm;
  return w;
}

std::vector<std::vector<int>> linear_extensions(const Wall& w) {
  int r = w.size();
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  std::vector<bool> used(r, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(seq.size()) == r) {
      out.push_back(seq);
      return;
    }
    for (int i = 0; i < r; ++i) {
      if (used[i]) continue;
      bool ready = true;
      for (int j = 0; j < r && ready; ++j)
        if (!used[j] && w.less(j, i)) ready = false;
      if (!ready) continue;
      used[i] = true;
      seq.push_back(i);
      rec();
      seq.pop_back();
      used[i] = false;
    }
  };
  rec();
  return out;
}

std::string wall_key(const Wall& w) {
  std::ostringstream os;
  for (const Brick& b : w.bricks) {
    os << '[';
    for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ']';
  }
  os << '|';
  for (auto [i, j] : w.cover_pairs()) os << i << '<' << j << ';';
  return os.str();
}

int LeveledWall::brick_count() const {
  int b = 0;
  for (const auto& lv : levels) b += static_cast<int>(lv.size());
  return b;
}

LeveledWall make_leveled_wall(int n, std::vector<std::vector<Brick>> levels) {
  if (levels.empty()) throw std::invalid_argument("leveled wall needs a level");
  std::vector<Brick> all;
  for (auto& lv : levels) {
    if (lv.empty()) throw std::invalid_argument("empty level");
    for (auto& b : lv) std::sort(b.begin(), b.end());
    std::sort(lv.begin(), lv.end(),
              [](const Brick& a, const Brick& b) { return a.front() < b.front(); });
    for (size_t i = 0; i < lv.size(); ++i) {
      for (size_t j = i + 1; j < lv.size(); ++j)
        if (share_element(lv[i], lv[j]))
          throw std::invalid_argument("bricks within a level must be disjoint");
      all.push_back(lv[i]);
    }
  }
  check_bricks(n, all);
  LeveledWall lw{std::move(levels)};
  if (!is_connected(n, unlevelize(n, lw)))
    throw std::invalid_argument("unlevelization is not connected");
  return lw;
}

std::string leveled_wall_key(const LeveledWall& lw) {
  std::ostringstream os;
  for (const auto& lv : lw.levels) {
    os << '{';
    for (const Brick& b : lv) {
      os << '[';
      for (size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
      os << ']';
    }
    os << '}';
  }
  return os.str();
}

Wall unlevelize(int n, const LeveledWall& lw) {
  std::vector<Brick> bricks;
  std::vector<int> level_of;
  for (size_t l = 0; l < lw.levels.size(); ++l)
    for (const Brick& b : lw.levels[l]) {
      bricks.push_back(b);
      level_of.push_back(static_cast<int>(l));
    }
  std::vector<std::pair<int, int>> pairs;
  for (size_t i = 0; i < bricks.size(); ++i)
    for (size_t j = 0; j < bricks.size(); ++j)
      if (level_of[i] < level_of[j] && share_element(bricks[i], bricks[j]))
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return make_wall(n, bricks, pairs);
}

std::vector<Partition> enum_partitions(int n) {
  // restricted growth strings
  std::vector<Partition> out;
  std::vector<int> a(n, 0);
  auto emit = [&]() {
    int m = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<Brick> blocks(m);
    for (int e = 0; e < n; ++e) blocks[a[e]].push_back(e + 1);
    out.push_back(make_partition(std::move(blocks)));
  };
  // iterate all RGS: a[0]=0, a[k] <= max(a[0..k-1]) + 1
  while (true) {
    emit();
    int k = n - 1;
    for (; k >= 1; --k) {
      int mx = *std::max_element(a.begin(), a.begin() + k);
      if (a[k] <= mx) break;
    }
    if (k < 1) break;
    ++a[k];
    for (int t = k + 1; t < n; ++t) a[t] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Partition kappa(int n, const Wall& w) {
  int r = w.size();
  std::vector<int> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (w.covers(i, j) && share_element(w.bricks[i], w.bricks[j]))
        parent[find(i)] = find(j);
  std::map<int, Brick> comp;
  for (int i = 0; i < r; ++i) {
    Brick& blk = comp[find(i)];
    blk.insert(blk.end(), w.bricks[i].begin(), w.bricks[i].end());
  }
  std::vector<Brick> blocks;
  for (auto& [root, blk] : comp) {
    std::sort(blk.begin(), blk.end());
    blk.erase(std::unique(blk.begin(), blk.end()), blk.end());
    blocks.push_back(std::move(blk));
  }
  (void)n;
  return make_partition(std::move(blocks));
}

bool is_connected(int n, const Wall& w) { return kappa(n, w).blocks.size() == 1; }

std::vector<std::pair<Partition, Partition>> enum_xconn(int n) {
  std::vector<Partition> ys = enum_partitions(n);
  std::vector<std::pair<Partition, Partition>> out;
  for (const Partition& lower : ys)
    for (const Partition& upper : ys) {
      std::vector<Brick> bricks;
      std::vector<std::pair<int, int>> pairs;
      for (const Brick& b : lower.blocks) bricks.push_back(b);
      int off = static_cast<int>(bricks.size());
      for (const Brick& b : upper.blocks) bricks.push_back(b);
      for (int i = 0; i < off; ++i)
        for (int j = off; j < static_cast<int>(bricks.size()); ++j)
          if (share_element(bricks[i], bricks[j])) pairs.emplace_back(i, j);
      if (is_connected(n, make_wall(n, bricks, pairs)))
        out.emplace_back(lower, upper);
    }
  return out;
}

namespace {

std::vector<Brick> candidate_bricks(int n, const std::set<int>& sizes) {
  std::vector<Brick> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!sizes.count(__builtin_popcount(mask))) continue;
    Brick b;
    for (int e = 0; e < n; ++e)
      if ((mask >> e) & 1u) b.push_back(e + 1);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Wall> enum_walls(int n, int rho, const std::set<int>& sizes) {
  std::vector<Brick> cand = candidate_bricks(n, sizes);
  std::map<std::string, Wall> found;

  // choose a multiset of rho candidate bricks
  std::vector<int> idx;
  std::vector<bool> covered(n + 1);
  auto try_multiset = [&]() {
    std::fill(covered.begin(), covered.end(), false);
    for (int k : idx)
      for (int e : cand[k]) covered[e] = true;
    for (int e = 1; e <= n; ++e)
      if (!covered[e]) return;
    // every wall is the unlevelization of a one-brick-per-level tower
    // (its linear extensions), so towers over all orderings reach all walls
    std::vector<int> perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<Brick> bricks;
      std::vector<std::pair<int, int>> pairs;
      for (int k : perm) bricks.push_back(cand[k]);
      for (size_t i = 0; i < bricks.size(); ++i)
        for (size_t j = i + 1; j < bricks.size(); ++j)
          if (share_element(bricks[i], bricks[j]))
            pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
      Wall w = make_wall(n, bricks, pairs);
      if (is_connected(n, w)) found.emplace(wall_key(w), w);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  // combinations with repetition
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      try_multiset();
      return;
    }
    for (int k = start; k < static_cast<int>(cand.size()); ++k) {
      idx.push_back(k);
      rec(k, left - 1);
      idx.pop_back();
    }
  };
  if (rho >= 1) rec(0, rho);

  std::vector<Wall> out;
  out.reserve(found.size());
  for (auto& [key, w] : found) out.push_back(std::move(w));
  return out;
}

std::vector<LeveledWall> enum_leveled_walls(int n, int p, int b,
                                            const std::set<int>& sizes) {
  std::vector<Brick> cand = candidate_bricks(n, sizes);
  std::vector<LeveledWall> out;
  std::vector<std::vector<Brick>> levels;

  // nonempty antichains of candidate bricks per level
  std::function<void(int, int)> rec_level = [&](int lev, int used) {
    if (lev == p) {
      if (used != b) return;
      try {
        out.push_back(make_leveled_wall(n, levels));
      } catch (const std::invalid_argument&) {
        // disconnected or non-covering; skip
      }
      return;
    }
    int levels_left = p - lev;
    std::vector<Brick> cur;
    std::function<void(int)> rec_brick = [&](int start) {
      if (!cur.empty()) {
        int total = used + static_cast<int>(cur.size());
        if (total + (levels_left - 1) <= b &&
            b <= total + (levels_left - 1) * n) {
          levels.push_back(cur);
          rec_level(lev + 1, total);
          levels.pop_back();
        }
      }
      for (int k = start; k < static_cast<int>(cand.size()); ++k) {
        bool ok = true;
        for (const Brick& c : cur)
          if (share_element(c, cand[k])) {
            ok = false;
            break;
          }
        if (!ok) continue;
        cur.push_back(cand[k]);
        rec_brick(k + 1);
        cur.pop_back();
      }
    };
    rec_brick(0);
  };
  if (p >= 1 && b >= p) rec_level(0, 0);

  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LeveledWall> level_fibers(int n, const Wall& w, int p) {
  if (!is_connected(n, w))
    throw std::invalid_argument("level_fibers: wall must be connected");
  int r = w.size();
  std::vector<LeveledWall> out;
  std::vector<int> f(r, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == r) {
      std::vector<bool> hit(p, false);
      for (int k = 0; k < r; ++k) hit[f[k]] = true;
      for (int l = 0; l < p; ++l)
        if (!hit[l]) return;
      std::vector<std::vector<Brick>> levels(p);
      for (int k = 0; k < r; ++k) levels[f[k]].push_back(w.bricks[k]);
      out.push_back(make_leveled_wall(n, levels));
      return;
    }
    for (int l = 0; l < p; ++l) {
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        if (w.less(k, i) && f[k] >= l) ok = false;
        if (w.less(i, k) && l >= f[k]) ok = false;
        if (!w.comparable(k, i) && f[k] == l &&
            share_element(w.bricks[k], w.bricks[i]))
          ok = false;  // unreachable: sharing implies comparable
      }
      if (!ok) continue;
      f[i] = l;
      rec(i + 1);
    }
  };
  rec(0);
  // distinct leveled walls only (equal bricks are order-forced, but be safe)
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // every fiber must unlevelize back to w
  for (const LeveledWall& lw : out)
    if (!(unlevelize(n, lw) == w))
      throw std::logic_error("level_fibers: fiber does not project to the wall");
  return out;
}

}  // namespace pkit::walls
