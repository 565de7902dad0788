// Reduced ordered BDD package: shared unique table, lossy computed cache,
// reference counting with explicit garbage collection, and in-place
// variable reordering by sifting. No complement edges.
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aigsynth::bdd {

/// Stable variable identifier, independent of the variable's current level.
using VarId = std::uint32_t;

/// Handle of a node inside one Manager. Handles survive garbage collection
/// (for referenced nodes) and reordering.
struct NodeRef {
  std::uint32_t index = 0;
  friend constexpr bool operator==(NodeRef, NodeRef) = default;
};

inline constexpr NodeRef kZero{0};
inline constexpr NodeRef kOne{1};

/// Thrown when a node budget or deadline is exceeded. The manager stays
/// consistent; nodes created by the aborted operation are dead.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Quantifier { exists, forall };

class Manager {
 public:
  struct Options {
    unsigned cache_log2 = 18;
    // Automatic sifting at safe points once the live node count has doubled
    // since the last reorder and exceeds the floor.
    bool auto_reorder = false;
    std::size_t reorder_floor = 10000;
    // Automatic collection at safe points when dead nodes exceed this.
    std::size_t gc_dead_threshold = 50000;
    // 0 = unlimited.
    std::size_t max_nodes = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    // Sifting stops moving a variable in one direction once the size grows
    // past this factor of the best size seen.
    double max_growth = 1.2;
  };

  Manager() : Manager(Options{}) {}
  explicit Manager(Options options);

  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  VarId new_var();
  std::size_t var_count() const { return var_to_level_.size(); }
  std::uint32_t level_of(VarId v) const { return var_to_level_.at(v); }
  VarId var_at_level(std::uint32_t level) const { return level_to_var_.at(level); }
  std::vector<VarId> order() const { return level_to_var_; }

  NodeRef constant(bool b) const { return b ? kOne : kZero; }
  NodeRef var(VarId v);
  NodeRef nvar(VarId v);

  NodeRef ite(NodeRef f, NodeRef g, NodeRef h);
  NodeRef apply_not(NodeRef f) { return ite(f, kZero, kOne); }
  NodeRef apply_and(NodeRef f, NodeRef g) { return ite(f, g, kZero); }
  NodeRef apply_or(NodeRef f, NodeRef g) { return ite(f, kOne, g); }
  NodeRef apply_xor(NodeRef f, NodeRef g) { return ite(f, apply_not(g), g); }
  NodeRef apply_implies(NodeRef f, NodeRef g) { return ite(f, g, kOne); }
  NodeRef apply_iff(NodeRef f, NodeRef g) { return ite(f, g, apply_not(g)); }

  /// Positive conjunction of the given variables.
  NodeRef cube(std::span<const VarId> vars);
  NodeRef quantify(NodeRef f, NodeRef cube, Quantifier kind);
  NodeRef exists(NodeRef f, NodeRef cube) { return quantify(f, cube, Quantifier::exists); }
  NodeRef forall(NodeRef f, NodeRef cube) { return quantify(f, cube, Quantifier::forall); }
  /// exists cube. (f and g), in one recursion.
  NodeRef and_exists(NodeRef f, NodeRef g, NodeRef cube);

  /// Simultaneous substitution: variable v is replaced by subst[v].
  /// Variables with no entry (or index past the end) are left alone.
  NodeRef vector_compose(NodeRef f, std::span<const std::optional<NodeRef>> subst);
  NodeRef cofactor(NodeRef f, VarId v, bool value);
  /// Coudert-Madre restrict: agrees with f wherever care holds.
  NodeRef restrict(NodeRef f, NodeRef care);

  void ref(NodeRef n);
  void deref(NodeRef n);
  std::uint32_t ref_count(NodeRef n) const { return node(n).ref; }
  /// Reclaims every node whose reference count is zero. Clears the cache.
  std::size_t collect_garbage();

  /// Plain sifting. Collects garbage first. Returns the new order
  /// (level to variable).
  std::vector<VarId> sift_reorder();
  /// Moves the variable at `level` one level down, in place.
  void swap_adjacent(std::uint32_t level);

  /// Hook for automatic GC and reordering; only call when every live
  /// result is referenced.
  void safe_point();

  bool eval(NodeRef f, std::span<const bool> values_by_var) const;
  bool eval(NodeRef f, const std::unordered_map<VarId, bool>& assignment) const;
  std::size_t node_count(NodeRef f) const;
  std::size_t node_count(std::span<const NodeRef> roots) const;
  /// Internal nodes with a non-zero reference count.
  std::size_t live_node_count() const { return internal_nodes_ - dead_nodes_; }
  std::size_t allocated_node_count() const { return internal_nodes_; }
  std::vector<VarId> support(NodeRef f) const;
  /// One satisfying assignment (indexed by VarId, unconstrained vars false).
  std::optional<std::vector<bool>> pick_minterm(NodeRef f) const;

  bool is_constant(NodeRef f) const { return f.index <= 1; }
  VarId top_var(NodeRef f) const { return node(f).var; }
  NodeRef low(NodeRef f) const { return node(f).low; }
  NodeRef high(NodeRef f) const { return node(f).high; }
  bool valid(NodeRef f) const;

  std::string to_dot(NodeRef f, const std::vector<std::string>& var_names = {}) const;

  std::size_t reorder_count() const { return reorder_count_; }
  std::size_t gc_count() const { return gc_count_; }
  void set_auto_reorder(bool on) { options_.auto_reorder = on; }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) { options_.deadline = d; }
  void set_max_nodes(std::size_t n) { options_.max_nodes = n; }

 private:
  static constexpr VarId kTerminalVar = 0xffffffffu;
  static constexpr VarId kFreeVar = 0xfffffffeu;
  static constexpr std::uint32_t kTerminalLevel = 0xffffffffu;

  struct Node {
    VarId var;
    NodeRef low;
    NodeRef high;
    std::uint32_t ref;
  };

  enum class Op : std::uint32_t { ite = 1, exists, forall, and_exists, cofactor0, cofactor1, restrict };

  struct CacheEntry {
    Op op{};
    std::uint32_t a = 0, b = 0, c = 0;
    NodeRef result{};
  };

  using Subtable = std::unordered_map<std::uint64_t, std::uint32_t>;

  static std::uint64_t key(NodeRef low, NodeRef high) {
    return (static_cast<std::uint64_t>(low.index) << 32) | high.index;
  }

  const Node& node(NodeRef n) const;
  std::uint32_t level(NodeRef n) const {
    const Node& x = nodes_[n.index];
    return x.var == kTerminalVar ? kTerminalLevel : var_to_level_[x.var];
  }
  void check(NodeRef n) const;

  NodeRef make(VarId v, NodeRef low, NodeRef high);
  void inc_ref(NodeRef n);
  // Used during reordering: drops a reference and frees the node at zero.
  void dec_ref_and_free(NodeRef n);
  void free_node(std::uint32_t index);
  void tick();

  std::optional<NodeRef> cache_lookup(Op op, std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
  void cache_insert(Op op, std::uint32_t a, std::uint32_t b, std::uint32_t c, NodeRef r);
  void cache_clear();

  NodeRef ite_rec(NodeRef f, NodeRef g, NodeRef h);
  NodeRef quantify_rec(NodeRef f, NodeRef cube, Quantifier kind);
  NodeRef and_exists_rec(NodeRef f, NodeRef g, NodeRef cube);
  NodeRef cofactor_rec(NodeRef f, VarId v, bool value);
  NodeRef restrict_rec(NodeRef f, NodeRef care);

  std::size_t sift_total() const { return live_node_count(); }
  void sift_variable(VarId v);

  Options options_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_list_;
  std::vector<Subtable> subtables_;  // indexed by VarId
  std::vector<std::uint32_t> var_to_level_;
  std::vector<VarId> level_to_var_;
  std::vector<CacheEntry> cache_;
  std::size_t internal_nodes_ = 0;
  std::size_t dead_nodes_ = 0;
  std::size_t live_at_last_reorder_ = 0;
  std::size_t reorder_count_ = 0;
  std::size_t gc_count_ = 0;
  std::uint32_t tick_ = 0;
  bool reordering_ = false;
};

/// Reference-counted handle: holds one reference on its node for its
/// lifetime. Operations go through safe points, so automatic GC and
/// reordering can run between them.
class Bdd {
 public:
  Bdd() = default;
  Bdd(Manager& m, NodeRef n) : mgr_(&m), node_(n) { mgr_->ref(node_); }
  Bdd(const Bdd& o) : mgr_(o.mgr_), node_(o.node_) {
    if (mgr_) mgr_->ref(node_);
  }
  Bdd(Bdd&& o) noexcept : mgr_(std::exchange(o.mgr_, nullptr)), node_(o.node_) {}
  Bdd& operator=(Bdd o) noexcept {
    std::swap(mgr_, o.mgr_);
    std::swap(node_, o.node_);
    return *this;
  }
  ~Bdd() {
    if (mgr_) mgr_->deref(node_);
  }

  static Bdd one(Manager& m) { return Bdd(m, kOne); }
  static Bdd zero(Manager& m) { return Bdd(m, kZero); }
  static Bdd var(Manager& m, VarId v) { return Bdd(m, m.var(v)); }
  static Bdd cube(Manager& m, std::span<const VarId> vars) { return Bdd(m, m.cube(vars)); }

  Manager& manager() const { return *mgr_; }
  NodeRef node() const { return node_; }
  bool is_one() const { return node_ == kOne; }
  bool is_zero() const { return node_ == kZero; }
  explicit operator bool() const { return mgr_ != nullptr; }

  Bdd operator!() const;
  Bdd operator&(const Bdd& o) const;
  Bdd operator|(const Bdd& o) const;
  Bdd operator^(const Bdd& o) const;
  Bdd& operator&=(const Bdd& o) { return *this = *this & o; }
  Bdd& operator|=(const Bdd& o) { return *this = *this | o; }
  Bdd implies(const Bdd& o) const;
  Bdd iff(const Bdd& o) const;
  static Bdd ite(const Bdd& f, const Bdd& g, const Bdd& h);

  Bdd exists(const Bdd& cube) const;
  Bdd forall(const Bdd& cube) const;
  Bdd and_exists(const Bdd& g, const Bdd& cube) const;
  Bdd compose(const std::vector<std::optional<Bdd>>& subst) const;
  Bdd cofactor(VarId v, bool value) const;
  Bdd restrict(const Bdd& care) const;

  /// True if this function implies `o` everywhere.
  bool leq(const Bdd& o) const { return (*this & !o).is_zero(); }
  std::size_t node_count() const { return mgr_->node_count(node_); }
  bool eval(std::span<const bool> values_by_var) const { return mgr_->eval(node_, values_by_var); }

  friend bool operator==(const Bdd& a, const Bdd& b) { return a.mgr_ == b.mgr_ && a.node_ == b.node_; }

 private:
  Manager& same(const Bdd& o) const;

  Manager* mgr_ = nullptr;
  NodeRef node_{};
};

}  // namespace aigsynth::bdd
