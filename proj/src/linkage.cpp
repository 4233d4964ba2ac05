#include "gdl/linkage.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

// Merge tie-break shared by every engine: highest affinity first, then the
// lexicographically smallest (min id, max id) pair.
bool pair_less(ClusterId a_lo, ClusterId a_hi, ClusterId b_lo, ClusterId b_hi) {
  if (a_lo != b_lo) {
    return a_lo < b_lo;
  }
  return a_hi < b_hi;
}

ClusterId validate_engine_inputs(const KnnGraph& graph, const Partition& seed,
                                 std::size_t target) {
  seed.check_valid();
  if (seed.vertex_count() != graph.size()) {
    throw InvalidConfigError("linkage: seed partition size does not match graph");
  }
  for (ClusterId c : seed.assignment) {
    if (c == kNoCluster) {
      throw InvalidConfigError("linkage: seed partition must assign every vertex");
    }
  }
  if (target < 1) {
    throw InvalidConfigError("linkage: target cluster count must be >= 1");
  }
  if (target > seed.cluster_count()) {
    throw TargetExceedsSeedsError(
        "linkage: target " + std::to_string(target) + " exceeds " +
        std::to_string(seed.cluster_count()) + " seed clusters");
  }
  return seed.clusters.rbegin()->first;  // largest seed id
}

Partition build_partition(std::map<ClusterId, std::vector<VertexId>> members,
                          std::size_t n) {
  Partition p;
  p.assignment.assign(n, kNoCluster);
  for (const auto& [id, verts] : members) {
    for (VertexId v : verts) {
      p.assignment[v] = id;
    }
  }
  p.clusters = std::move(members);
  return p;
}

std::vector<VertexId> merge_members(const std::vector<VertexId>& a,
                                    const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Reference agglomeration over a full symmetric affinity table. Every
// iteration rescans all live pairs for the maximum; table entries for
// untouched pairs are pure functions of the static graph and their member
// lists, so the cached values are bit-identical to recomputation. The merged
// cluster's row is evaluated fresh. Also hosts the average-linkage baseline
// via the glink affinity.
class TableEngine {
 public:
  TableEngine(const KnnGraph& graph, const Partition& seed, std::size_t target,
              bool glink)
      : eval_(graph), target_(target), glink_(glink) {
    next_id_ = validate_engine_inputs(graph, seed, target) + 1;
    n_ = graph.size();
    members_ = seed.clusters;
    n0_ = members_.size();
    live_.reserve(n0_);
    slot_of_.reserve(2 * n0_);
    std::size_t s = 0;
    for (const auto& [id, verts] : members_) {
      (void)verts;
      live_.push_back(id);
      slot_of_[id] = s++;
    }
    table_.assign(n0_ * n0_, 0.0);
    for (std::size_t i = 0; i + 1 < live_.size(); ++i) {
      for (std::size_t j = i + 1; j < live_.size(); ++j) {
        store(live_[i], live_[j], pair_affinity(live_[i], live_[j]));
      }
    }
  }

  MergeTrace run() {
    while (members_.size() > target_) {
      merge_best();
    }
    MergeTrace trace;
    trace.steps = std::move(steps_);
    trace.final = build_partition(std::move(members_), n_);
    return trace;
  }

 private:
  double pair_affinity(ClusterId a, ClusterId b) {
    const auto& ma = members_.at(a);
    const auto& mb = members_.at(b);
    return glink_ ? eval_.glink_sym(ma, mb) : eval_.sym(ma, mb);
  }

  void store(ClusterId a, ClusterId b, double aff) {
    const std::size_t sa = slot_of_.at(a);
    const std::size_t sb = slot_of_.at(b);
    table_[sa * n0_ + sb] = aff;
    table_[sb * n0_ + sa] = aff;
  }

  void merge_best() {
    // full O(n_c^2) table scan; live_ is ascending so visits are in
    // lexicographic pair order
    std::vector<std::size_t> slots(live_.size());
    for (std::size_t i = 0; i < live_.size(); ++i) {
      slots[i] = slot_of_.at(live_[i]);
    }
    double best_aff = -1.0;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i + 1 < live_.size(); ++i) {
      const double* row = table_.data() + slots[i] * n0_;
      for (std::size_t j = i + 1; j < live_.size(); ++j) {
        const double aff = row[slots[j]];
        if (aff > best_aff ||
            (aff == best_aff && pair_less(live_[i], live_[j], live_[bi], live_[bj]))) {
          best_aff = aff;
          bi = i;
          bj = j;
        }
      }
    }
    const ClusterId a = live_[bi];
    const ClusterId b = live_[bj];
    const ClusterId ab = next_id_++;
    std::vector<VertexId> merged = merge_members(members_.at(a), members_.at(b));

    std::vector<ClusterId> others;
    others.reserve(live_.size() - 2);
    for (ClusterId c : live_) {
      if (c != a && c != b) {
        others.push_back(c);
      }
    }
    const std::size_t slot_ab = slot_of_.at(a);
    slot_of_.erase(a);
    slot_of_.erase(b);
    slot_of_[ab] = slot_ab;
    members_.erase(a);
    members_.erase(b);
    members_[ab] = std::move(merged);
    for (ClusterId c : others) {
      store(ab, c, pair_affinity(ab, c));
    }
    live_ = std::move(others);
    live_.push_back(ab);  // fresh ids grow, so live_ stays ascending
    steps_.push_back({a, b, ab, best_aff, false});
  }

  AffinityEvaluator eval_;
  std::size_t target_;
  bool glink_;
  std::size_t n_ = 0;
  std::size_t n0_ = 0;
  ClusterId next_id_ = 0;
  std::map<ClusterId, std::vector<VertexId>> members_;
  std::vector<ClusterId> live_;  // ascending
  std::unordered_map<ClusterId, std::size_t> slot_of_;
  std::vector<double> table_;  // n0 x n0, slot-indexed, symmetric
  std::vector<MergeStep> steps_;
};

struct HeapEntry {
  double aff;
  ClusterId lo, hi;
};

struct HeapLess {
  // priority_queue pops its greatest element; highest affinity wins and the
  // lexicographically smallest pair wins ties
  bool operator()(const HeapEntry& x, const HeapEntry& y) const {
    if (x.aff != y.aff) {
      return x.aff < y.aff;
    }
    return pair_less(y.lo, y.hi, x.lo, x.hi);
  }
};

// Incremental engine. Keeps directed affinities for live pairs; a merge
// derives the merged cluster's outgoing row by adding its parents' rows and
// refreshes only the incoming column, then pushes the new pairs onto a lazy
// max-heap. Entries whose ids died are skipped on pop; affinities between
// live clusters never change, so the heap never holds stale values.
class UpdateEngine {
 public:
  UpdateEngine(const KnnGraph& graph, const Partition& seed, std::size_t target)
      : eval_(graph), target_(target) {
    next_id_ = validate_engine_inputs(graph, seed, target) + 1;
    n_ = graph.size();
    members_ = seed.clusters;
    n0_ = members_.size();
    slot_of_.reserve(2 * n0_);
    std::size_t s = 0;
    std::vector<ClusterId> ids;
    ids.reserve(n0_);
    for (const auto& [id, verts] : members_) {
      (void)verts;
      ids.push_back(id);
      slot_of_[id] = s++;
    }
    table_.assign(n0_ * n0_, 0.0);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const ClusterId a = ids[i];
        const ClusterId b = ids[j];
        set_directed(a, b, eval_.asym(members_.at(a), members_.at(b)));
        set_directed(b, a, eval_.asym(members_.at(b), members_.at(a)));
        heap_.push({sym_from_table(a, b), a, b});
      }
    }
  }

  MergeTrace run() {
    while (members_.size() > target_) {
      merge_best();
    }
    MergeTrace trace;
    trace.steps = std::move(steps_);
    trace.final = build_partition(std::move(members_), n_);
    return trace;
  }

 private:
  double directed(ClusterId from, ClusterId to) const {
    return table_[slot_of_.at(from) * n0_ + slot_of_.at(to)];
  }

  void set_directed(ClusterId from, ClusterId to, double aff) {
    table_[slot_of_.at(from) * n0_ + slot_of_.at(to)] = aff;
  }

  // Same term order as AffinityEvaluator::sym: the side with the smaller
  // minimum vertex is the "to" side of the first addend.
  double sym_from_table(ClusterId a, ClusterId b) const {
    const bool a_low = members_.at(a).front() < members_.at(b).front();
    const ClusterId lo = a_low ? a : b;
    const ClusterId hi = a_low ? b : a;
    return directed(hi, lo) + directed(lo, hi);
  }

  void merge_best() {
    while (!heap_.empty()) {
      const HeapEntry top = heap_.top();
      if (members_.count(top.lo) && members_.count(top.hi)) {
        break;
      }
      heap_.pop();
    }
    if (heap_.empty()) {
      // unreachable: every pair of coexisting clusters is pushed exactly once
      throw Error("gdl-u: affinity heap exhausted with live pairs remaining");
    }
    const HeapEntry best = heap_.top();
    heap_.pop();
    const ClusterId a = best.lo;
    const ClusterId b = best.hi;
    const ClusterId ab = next_id_++;
    std::vector<VertexId> merged = merge_members(members_.at(a), members_.at(b));

    std::vector<ClusterId> others;
    others.reserve(members_.size() - 2);
    for (const auto& [id, verts] : members_) {
      (void)verts;
      if (id != a && id != b) {
        others.push_back(id);
      }
    }
    const std::size_t slot_ab = slot_of_.at(a);
    for (ClusterId c : others) {
      // outgoing row decomposes over the union's members (smaller parent id
      // first); incoming column cannot and is evaluated fresh
      const double out = directed(a, c) + directed(b, c);
      const double in = eval_.asym(members_.at(c), merged);
      table_[slot_ab * n0_ + slot_of_.at(c)] = out;
      table_[slot_of_.at(c) * n0_ + slot_ab] = in;
    }
    slot_of_.erase(a);
    slot_of_.erase(b);
    slot_of_[ab] = slot_ab;
    members_.erase(a);
    members_.erase(b);
    members_[ab] = std::move(merged);
    for (ClusterId c : others) {
      heap_.push({sym_from_table(std::min(ab, c), std::max(ab, c)),
                  std::min(ab, c), std::max(ab, c)});
    }
    steps_.push_back({a, b, ab, best.aff, false});
  }

  AffinityEvaluator eval_;
  std::size_t target_;
  std::size_t n_ = 0;
  std::size_t n0_ = 0;
  ClusterId next_id_ = 0;
  std::map<ClusterId, std::vector<VertexId>> members_;
  std::unordered_map<ClusterId, std::size_t> slot_of_;
  std::vector<double> table_;  // directed: [from][to]
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap_;
  std::vector<MergeStep> steps_;
};

}  // namespace

MergeTrace gdl_cluster(const KnnGraph& graph, const Partition& seed,
                       std::size_t target) {
  return TableEngine(graph, seed, target, /*glink=*/false).run();
}

MergeTrace glink_cluster(const KnnGraph& graph, const Partition& seed,
                         std::size_t target) {
  return TableEngine(graph, seed, target, /*glink=*/true).run();
}

MergeTrace gdl_u_cluster(const KnnGraph& graph, const Partition& seed,
                         std::size_t target) {
  return UpdateEngine(graph, seed, target).run();
}

AgdlEngine::AgdlEngine(const KnnGraph& graph, const Partition& seed,
                       std::size_t target, std::size_t kc)
    : graph_(&graph), eval_(graph), target_(target), kc_(kc) {
  if (kc < 1) {
    throw InvalidConfigError("agdl: kc must be >= 1");
  }
  next_id_ = validate_engine_inputs(graph, seed, target) + 1;
  members_ = seed.clusters;
  const std::size_t m = members_.size();
  std::vector<ClusterId> ids;
  ids.reserve(m);
  for (const auto& [id, verts] : members_) {
    (void)verts;
    ids.push_back(id);
  }
  // all-pairs affinities once, then each cluster keeps its kc best partners
  // (zero affinity allowed; ties prefer the smaller id)
  std::vector<double> tri(m * (m - 1) / 2, 0.0);
  const auto tri_at = [m](std::size_t i, std::size_t j) {
    // i < j
    return i * (2 * m - i - 1) / 2 + (j - i - 1);
  };
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      tri[tri_at(i, j)] = fresh_sym(ids[i], ids[j]);
    }
  }
  std::vector<Neighbor> cand;
  cand.reserve(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) {
        cand.push_back({ids[j], tri[j > i ? tri_at(i, j) : tri_at(j, i)]});
      }
    }
    const std::size_t keep = std::min(kc_, cand.size());
    std::partial_sort(cand.begin(), cand.begin() + keep, cand.end(),
                      [](const Neighbor& x, const Neighbor& y) {
                        if (x.affinity != y.affinity) {
                          return x.affinity > y.affinity;
                        }
                        return x.id < y.id;
                      });
    cand.resize(keep);
    sets_[ids[i]] = cand;
  }
}

double AgdlEngine::fresh_sym(ClusterId a, ClusterId b) {
  return eval_.sym(members_.at(a), members_.at(b));
}

void AgdlEngine::insert_neighbor(std::vector<Neighbor>& set, Neighbor entry) {
  if (set.size() < kc_) {
    set.push_back(entry);
    return;
  }
  // full set: evict the weakest entry (largest id on affinity ties) only if
  // the newcomer strictly beats it
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < set.size(); ++i) {
    if (set[i].affinity < set[weakest].affinity ||
        (set[i].affinity == set[weakest].affinity && set[i].id > set[weakest].id)) {
      weakest = i;
    }
  }
  if (entry.affinity > set[weakest].affinity) {
    set[weakest] = entry;
  }
}

bool AgdlEngine::done() const { return members_.size() <= target_; }

void AgdlEngine::step() {
  if (done()) {
    return;
  }
  // argmax over tracked pairs; entries can be seen from both owners, the
  // canonical (min id, max id) comparison makes that harmless
  bool found = false;
  double best_aff = 0.0;
  ClusterId best_lo = 0, best_hi = 0;
  for (const auto& [owner, set] : sets_) {
    for (const Neighbor& nb : set) {
      const ClusterId lo = std::min(owner, nb.id);
      const ClusterId hi = std::max(owner, nb.id);
      if (!found || nb.affinity > best_aff ||
          (nb.affinity == best_aff && pair_less(lo, hi, best_lo, best_hi))) {
        found = true;
        best_aff = nb.affinity;
        best_lo = lo;
        best_hi = hi;
      }
    }
  }
  bool degenerate = false;
  if (!found) {
    // every neighbor set is empty; force the two smallest live ids together
    // so the loop still reaches the target
    auto it = members_.begin();
    best_lo = it->first;
    best_hi = std::next(it)->first;
    best_aff = fresh_sym(best_lo, best_hi);
    degenerate = true;
  }

  const ClusterId a = best_lo;
  const ClusterId b = best_hi;
  const ClusterId ab = next_id_++;
  std::vector<VertexId> merged = merge_members(members_.at(a), members_.at(b));

  // candidate pool for the union's own set, gathered before the parents die
  std::set<ClusterId> candidates;
  for (const Neighbor& nb : sets_.at(a)) {
    candidates.insert(nb.id);
  }
  for (const Neighbor& nb : sets_.at(b)) {
    candidates.insert(nb.id);
  }
  candidates.erase(a);
  candidates.erase(b);
  sets_.erase(a);
  sets_.erase(b);

  members_.erase(a);
  members_.erase(b);
  members_[ab] = std::move(merged);

  std::unordered_map<ClusterId, double> memo;
  const auto affinity_to_union = [&](ClusterId c) {
    const auto it = memo.find(c);
    if (it != memo.end()) {
      return it->second;
    }
    const double aff = fresh_sym(ab, c);
    memo.emplace(c, aff);
    return aff;
  };

  // purge dead ids everywhere; sets that referenced a parent adopt the union
  for (auto& [owner, set] : sets_) {
    const auto dead = [&](const Neighbor& nb) {
      return nb.id == a || nb.id == b;
    };
    const auto first_dead = std::remove_if(set.begin(), set.end(), dead);
    if (first_dead != set.end()) {
      set.erase(first_dead, set.end());
      insert_neighbor(set, {ab, affinity_to_union(owner)});
    }
  }

  std::vector<Neighbor> own;
  own.reserve(candidates.size());
  for (ClusterId c : candidates) {
    own.push_back({c, affinity_to_union(c)});
  }
  const std::size_t keep = std::min(kc_, own.size());
  std::partial_sort(own.begin(), own.begin() + keep, own.end(),
                    [](const Neighbor& x, const Neighbor& y) {
                      if (x.affinity != y.affinity) {
                        return x.affinity > y.affinity;
                      }
                      return x.id < y.id;
                    });
  own.resize(keep);
  sets_[ab] = std::move(own);

  steps_.push_back({a, b, ab, best_aff, degenerate});
}

Partition AgdlEngine::current_partition() const {
  return build_partition(members_, graph_->size());
}

MergeTrace AgdlEngine::take_trace() {
  MergeTrace trace;
  trace.steps = std::move(steps_);
  trace.final = build_partition(std::move(members_), graph_->size());
  return trace;
}

MergeTrace agdl_cluster(const KnnGraph& graph, const Partition& seed,
                        std::size_t target, std::size_t kc) {
  AgdlEngine engine(graph, seed, target, kc);
  while (!engine.done()) {
    engine.step();
  }
  return engine.take_trace();
}

}  // namespace gdl
