#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aut/term.hpp"

namespace aut {

// One definition: c(x1:A1, ..., xn:An) := body : type. A missing body
// marks a primitive notion; primitives are typed like any other
// constant at use sites but are never unfolded.
struct DefEntry {
  std::string name;
  Telescope params;
  std::optional<TermPtr> body; // nullopt = primitive (PN)
  TermPtr type;

  bool is_primitive() const { return !body.has_value(); }
};

// An ordered list of definitions; entries may reference only constants
// defined earlier. Immutable once built up (append only).
class Env {
public:
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  const DefEntry* find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  std::size_t index_of(const std::string& name) const;
  const DefEntry& at(std::size_t i) const { return entries_[i]; }

  void add(DefEntry entry);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

private:
  std::vector<DefEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct KernelConfig {
  bool eta_enabled = false;
  // Bounds the number of unfoldings a single checker instance may
  // perform; only used to corner the reduction machinery in tests.
  std::optional<std::uint64_t> delta_fuel;
  // Compare same-headed constants argument-wise before unfolding.
  // Off means every constant head is expanded eagerly; the verdicts
  // must not change, which the tests exercise.
  bool lazy_delta = true;
};

struct ReductionStats {
  std::uint64_t beta = 0;
  std::uint64_t delta = 0;
  std::uint64_t eta = 0;

  ReductionStats& operator+=(const ReductionStats& o) {
    beta += o.beta;
    delta += o.delta;
    eta += o.eta;
    return *this;
  }
};

// Unfold one instantiated constant: c(args) -> body[params := args].
// Throws UnfoldPrimitive on PN entries.
TermPtr delta_unfold(const Env& env, const std::string& name,
                     const std::vector<TermPtr>& args);

// Typing and conversion for the core calculus. All judgements are
// relative to one Env; a checker instance accumulates reduction
// counts for the queries it ran and is otherwise stateless, so use
// one instance per logical query (or per book).
class TypeChecker {
public:
  explicit TypeChecker(const Env& env, KernelConfig cfg = {});

  // weak head normal form: the head is neither a beta redex nor an
  // unfoldable constant (Pi heads applied to arguments also contract)
  TermPtr whnf(TermPtr t);

  // definitional equality generated by beta, delta and (if enabled) eta
  bool convertible(const TermPtr& a, const TermPtr& b);

  // infer A with env ; ctx |- t : A
  TermPtr infer(const Telescope& ctx, const TermPtr& t);

  // accept iff infer(t) converts to expected and expected is a valid
  // type (the top sort, or itself typed by a sort); throws otherwise
  void check(const Telescope& ctx, const TermPtr& t, const TermPtr& expected);

  // full beta/delta normal form, including under binders
  TermPtr normalize(const TermPtr& t);

  const ReductionStats& stats() const { return stats_; }
  const Env& env() const { return env_; }
  const KernelConfig& config() const { return cfg_; }

private:
  TermPtr whnf_machine(TermPtr t, bool unfold);
  bool conv(const TermPtr& a, const TermPtr& b);
  bool try_eta(const TermPtr& lam_side, const TermPtr& other);
  TermPtr infer_rec(Telescope& ctx, const TermPtr& t);
  TermPtr require_sort_type(Telescope& ctx, const TermPtr& t, const char* what);
  void check_against(Telescope& ctx, const TermPtr& t, const TermPtr& expected);
  void spend_fuel();
  TermPtr fresh_fvar();

  const Env& env_;
  KernelConfig cfg_;
  ReductionStats stats_;
  std::optional<std::uint64_t> fuel_;
  std::uint64_t fresh_counter_ = 0;
};

// Convenience wrappers constructing a throwaway checker.
TermPtr whnf(const Env& env, const KernelConfig& cfg, const TermPtr& t);
bool convertible(const Env& env, const KernelConfig& cfg, const TermPtr& a,
                 const TermPtr& b);
TermPtr infer_type(const Env& env, const KernelConfig& cfg, const Telescope& ctx,
                   const TermPtr& t);
TermPtr normalize(const Env& env, const KernelConfig& cfg, const TermPtr& t);

} // namespace aut
