#ifndef PKIT_WALLS_HPP
#define PKIT_WALLS_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace pkit::walls {

// Ground sets are 1..n with their natural order (shuffle viewpoint); bricks
// are sorted subsets.
using Brick = std::vector<int>;

struct Partition {
  std::vector<Brick> blocks;  // normal form: sorted by minimum element

  bool operator==(const Partition& o) const { return blocks == o.blocks; }
  bool operator<(const Partition& o) const { return blocks < o.blocks; }
};

Partition make_partition(std::vector<Brick> blocks);

// A wall: bricks plus the canonical partial order generated by the
// per-element vertical orders. Stored in canonical form, so structural
// equality is wall equality:
//   - the order relation is the transitive closure of its restriction to
//     pairs of bricks sharing an element;
//   - bricks are numbered by (minimal level, min element, content), where the
//     minimal level of a brick is the longest chain strictly below it.
struct Wall {
  std::vector<Brick> bricks;
  std::vector<std::uint64_t> below;  // bit j of below[i] <=> brick i < brick j

  int size() const { return static_cast<int>(bricks.size()); }
  bool less(int i, int j) const { return (below[i] >> j) & 1u; }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
  // Covering pair of the canonical order (these always share an element).
  bool covers(int i, int j) const;
  std::vector<std::pair<int, int>> cover_pairs() const;
  std::vector<int> min_levels() const;

  bool operator==(const Wall& o) const {
    return bricks == o.bricks && below == o.below;
  }
  bool operator<(const Wall& o) const {
    return bricks != o.bricks ? bricks < o.bricks : below < o.below;
  }
};

// Builds the canonical wall from bricks and any set of generating vertical
// constraints (i below j). Throws std::invalid_argument when the data does
// not satisfy the wall axioms (empty brick, cyclic order, bricks sharing an
// element left incomparable, union not equal to 1..n).
Wall make_wall(int n, std::vector<Brick> bricks,
               const std::vector<std::pair<int, int>>& below_pairs);

// Same, also reporting the renumbering: perm[k] is the input position of the
// canonical brick k. Needed to track Koszul signs across canonicalization.
Wall make_wall_perm(int n, std::vector<Brick> bricks,
                    const std::vector<std::pair<int, int>>& below_pairs,
                    std::vector<int>* perm);

// All bottom-to-top orders of the bricks compatible with the canonical
// partial order, as permutations of brick indices.
std::vector<std::vector<int>> linear_extensions(const Wall& w);

// Stable text form, also used as dedup key: bricks plus cover pairs.
std::string wall_key(const Wall& w);

struct LeveledWall {
  // levels, bottom first; within a level bricks are disjoint and sorted by
  // minimum element.
  std::vector<std::vector<Brick>> levels;

  int brick_count() const;
  bool operator==(const LeveledWall& o) const { return levels == o.levels; }
  bool operator<(const LeveledWall& o) const { return levels < o.levels; }
};

// Validates the leveled-wall axioms (nonempty levels, per-level disjointness,
// union = 1..n, connected unlevelization) and returns the normalized value.
LeveledWall make_leveled_wall(int n, std::vector<std::vector<Brick>> levels);

std::string leveled_wall_key(const LeveledWall& lw);

// Forgets levels; vertical order of bricks sharing an element is the level
// order.
Wall unlevelize(int n, const LeveledWall& lw);

// ---- enumeration ----

std::vector<Partition> enum_partitions(int n);

// Connected components of the succession-adjacency relation, merged into a
// partition of 1..n.
Partition kappa(int n, const Wall& w);
bool is_connected(int n, const Wall& w);

// Ordered pairs of partitions whose two-layer wall is connected.
std::vector<std::pair<Partition, Partition>> enum_xconn(int n);

// All connected walls with exactly `rho` bricks whose cardinalities lie in
// `sizes`, in canonical form, ordered by wall_key.
std::vector<Wall> enum_walls(int n, int rho, const std::set<int>& sizes);

// All leveled walls with p nonempty levels and b bricks total.
std::vector<LeveledWall> enum_leveled_walls(int n, int p, int b,
                                            const std::set<int>& sizes);

// All leveled walls with p levels whose unlevelization equals w. Requires w
// connected. For p = #bricks these are the linear extensions of the wall's
// canonical order.
std::vector<LeveledWall> level_fibers(int n, const Wall& w, int p);

}  // namespace pkit::walls

#endif
