#ifndef NULLCONE_CLASSIFIER_HPP
#define NULLCONE_CLASSIFIER_HPP

#include "nullcone/algebra.hpp"
#include "nullcone/feasibility.hpp"
#include "nullcone/frame.hpp"
#include "nullcone/killing.hpp"
#include "nullcone/structure_tensor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace nullcone {

enum class Verdict { certified, infeasible_for_all_searched_frames, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::infeasible_for_all_searched_frames: return "infeasible_for_all_searched_frames";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct MembershipReport {
  Verdict verdict = Verdict::inconclusive;
  int p = 0, k = 0;
  /// Witness: T mapped by (permutation, signs) certifies on the canonical
  /// (p, k) layout with the class below.
  std::optional<FrameLayout> layout;
  std::optional<std::vector<Rational>> class_vector;
  std::vector<int> permutation;
  std::vector<int> signs;
  std::optional<StructureTensor> witness;
  std::uint64_t frames_searched = 0;
  std::uint64_t pruned_by_nilpotency = 0;
  /// Killing operator of the witness on its layout; set only when certified.
  std::optional<bool> killing_nilpotent;
};

struct SearchOptions {
  bool prune = true;
  unsigned threads = 1;
};

namespace detail {

/// Result of scanning one block of permutations (all with the same image of
/// index 1) in lexicographic order.
struct BlockOutcome {
  bool found = false;
  std::vector<int> perm, signs;
  std::vector<Rational> raw_class;
  std::uint64_t frames = 0;  // frames visited up to and including the witness
  std::uint64_t pruned = 0;
};

class FrameSearch {
 public:
  FrameSearch(const StructureTensor& t, int p, int k, SearchOptions opt)
      : t_(t), p_(p), k_(k), n_(t.dim()), opt_(opt), canonical_(FrameLayout::canonical(p, k)) {}

  MembershipReport run() {
    MembershipReport rep;
    rep.p = p_;
    rep.k = k_;
    std::vector<BlockOutcome> blocks(n_ == 0 ? 1 : n_);
    if (n_ == 0) {
      blocks[0] = scan_block(0);
    } else {
      std::atomic<int> next{0};
      std::atomic<int> best_found{n_};
      auto worker = [&] {
        while (true) {
          int b = next.fetch_add(1);
          if (b >= n_) return;
          // Blocks after a successful one cannot hold the least witness.
          if (b > best_found.load()) continue;
          blocks[b] = scan_block(b + 1);
          if (blocks[b].found) {
            int cur = best_found.load();
            while (b < cur && !best_found.compare_exchange_weak(cur, b)) {
            }
          }
        }
      };
      unsigned nthreads = std::max(1u, std::min<unsigned>(opt_.threads, static_cast<unsigned>(n_)));
      std::vector<std::thread> pool;
      for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
    }
    for (const auto& b : blocks) {
      rep.frames_searched += b.frames;
      rep.pruned_by_nilpotency += b.pruned;
      if (b.found) {
        finish(rep, b);
        return rep;
      }
    }
    rep.verdict = Verdict::infeasible_for_all_searched_frames;
    return rep;
  }

 private:
  /// first_image = 0 means the (single) empty permutation.
  BlockOutcome scan_block(int first_image) {
    BlockOutcome out;
    std::vector<int> perm;
    if (n_ > 0) {
      perm.push_back(first_image);
      for (int v = 1; v <= n_; ++v)
        if (v != first_image) perm.push_back(v);
    }
    const std::uint64_t masks = std::uint64_t{1} << n_;
    do {
      if (opt_.prune && !nilpotent_upper_part(perm)) {
        out.frames += masks;
        out.pruned += masks;
        continue;
      }
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        ++out.frames;
        std::vector<int> signs(n_, 1);
        for (int i = 0; i < n_; ++i)
          if (mask >> i & 1) signs[i] = -1;
        StructureTensor mapped = apply_frame_map(canonical_, t_, perm, signs);
        auto support = weight_support(canonical_, mapped);
        auto x = solve(support);
        if (x) {
          out.found = true;
          out.perm = perm;
          out.signs = signs;
          out.raw_class = *x;
          return out;
        }
      }
    } while (n_ > 0 && std::next_permutation(perm.begin() + 1, perm.end()));
    return out;
  }

  /// span of the indices sent to N+ ∪ H must be a nilpotent subalgebra.
  bool nilpotent_upper_part(const std::vector<int>& perm) {
    std::uint64_t key = 0;
    std::vector<int> idx;
    for (int a = 1; a <= n_; ++a) {
      const Role& r = canonical_.role(perm[a - 1]);
      if (r.kind != Role::NMinus) {
        key |= std::uint64_t{1} << (a - 1);
        idx.push_back(a);
      }
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = nilpotent_cache_.find(key);
      if (it != nilpotent_cache_.end()) return it->second;
    }
    auto closure = subalgebra_closure_check(t_, Subspace::coordinate(n_, idx));
    bool ok = closure.closed && is_nilpotent(*closure.restricted);
    std::lock_guard<std::mutex> lock(mu_);
    nilpotent_cache_[key] = ok;
    return ok;
  }

  std::optional<std::vector<Rational>> solve(const std::set<BoostWeight>& support) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = lp_cache_.find(support);
      if (it != lp_cache_.end()) return it->second;
    }
    std::optional<std::vector<Rational>> x;
    if (support.empty())
      x = std::vector<Rational>(p_, Rational(1));
    else if (p_ <= 6)
      x = feasibility::fourier_motzkin(p_, support);
    else
      x = feasibility::simplex(p_, support);
    std::lock_guard<std::mutex> lock(mu_);
    lp_cache_.emplace(support, x);
    return x;
  }

  void finish(MembershipReport& rep, const BlockOutcome& b) {
    NormalizedClass nc = normalize_class(b.raw_class);
    // Move slot order[s-1] to slot s so the sorted class sits on the
    // canonical layout.
    std::vector<int> new_slot(p_ + 1, 0);
    for (int s = 1; s <= p_; ++s) new_slot[nc.order[s - 1]] = s;
    std::vector<int> perm = b.perm;
    for (auto& v : perm) {
      const Role& r = canonical_.role(v);
      if (r.kind == Role::NMinus) v = 2 * new_slot[r.slot] - 1;
      if (r.kind == Role::NPlus) v = 2 * new_slot[r.slot];
    }
    rep.verdict = Verdict::certified;
    rep.permutation = perm;
    rep.signs = b.signs;
    rep.class_vector = nc.values;
    rep.layout = canonical_;
    rep.witness = apply_frame_map(canonical_, t_, perm, b.signs);
  }

  const StructureTensor& t_;
  int p_, k_, n_;
  SearchOptions opt_;
  FrameLayout canonical_;
  std::mutex mu_;
  std::map<std::uint64_t, bool> nilpotent_cache_;
  std::map<std::set<BoostWeight>, std::optional<std::vector<Rational>>> lp_cache_;
};

}  // namespace detail

/// Searches index permutations (lexicographic) times sign flips (identity
/// first) for a frame of signature (p, k) in which T admits a class.
inline MembershipReport search_frame(const StructureTensor& T, int p, int k, SearchOptions opt = {}) {
  if (p < 0 || k < 0 || 2 * p + k != T.dim())
    throw DimensionMismatch("signature (" + std::to_string(p) + "," + std::to_string(k) + ") does not match algebra dimension " + std::to_string(T.dim()));
  if (T.dim() > 12) throw std::invalid_argument("frame search is limited to dimension 12");
  detail::FrameSearch s(T, p, k, opt);
  return s.run();
}

/// search_frame per signature, with the Killing operator of each witness
/// checked for nilpotency.
inline std::vector<MembershipReport> membership_report(const StructureTensor& T, const std::vector<std::pair<int, int>>& signatures,
                                                       SearchOptions opt = {}) {
  std::vector<MembershipReport> out;
  for (const auto& [p, k] : signatures) {
    MembershipReport r = search_frame(T, p, k, opt);
    if (r.verdict == Verdict::certified)
      r.killing_nilpotent = nilpotent_operator_check(killing_operator(*r.layout, *r.witness).matrix).nilpotent;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nullcone

#endif  // NULLCONE_CLASSIFIER_HPP
