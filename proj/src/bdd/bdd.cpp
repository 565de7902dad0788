#include "aigsynth/bdd.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace aigsynth::bdd {

Manager::Manager(Options options) : options_(options) {
  // Terminals: index 0 is FALSE, index 1 is TRUE.
  nodes_.push_back({kTerminalVar, kZero, kZero, 0});
  nodes_.push_back({kTerminalVar, kOne, kOne, 0});
  cache_.resize(std::size_t{1} << options_.cache_log2);
}

VarId Manager::new_var() {
  VarId v = static_cast<VarId>(var_to_level_.size());
  var_to_level_.push_back(static_cast<std::uint32_t>(level_to_var_.size()));
  level_to_var_.push_back(v);
  subtables_.emplace_back();
  return v;
}

const Manager::Node& Manager::node(NodeRef n) const {
  check(n);
  return nodes_[n.index];
}

bool Manager::valid(NodeRef n) const { return n.index < nodes_.size() && nodes_[n.index].var != kFreeVar; }

void Manager::check(NodeRef n) const {
  if (!valid(n)) throw std::invalid_argument("invalid BDD node handle " + std::to_string(n.index));
}

NodeRef Manager::var(VarId v) {
  if (v >= var_count()) throw std::out_of_range("unknown BDD variable " + std::to_string(v));
  return make(v, kZero, kOne);
}

NodeRef Manager::nvar(VarId v) {
  if (v >= var_count()) throw std::out_of_range("unknown BDD variable " + std::to_string(v));
  return make(v, kOne, kZero);
}

void Manager::tick() {
  if (reordering_) return;
  if (options_.max_nodes != 0 && internal_nodes_ >= options_.max_nodes)
    throw ResourceExhausted("BDD node limit of " + std::to_string(options_.max_nodes) + " reached");
  if (options_.deadline && (++tick_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > *options_.deadline)
    throw ResourceExhausted("deadline exceeded");
}

NodeRef Manager::make(VarId v, NodeRef low, NodeRef high) {
  if (low == high) return low;
  Subtable& table = subtables_[v];
  const auto k = key(low, high);
  if (auto it = table.find(k); it != table.end()) return NodeRef{it->second};
  tick();
  std::uint32_t idx;
  if (!free_list_.empty()) {
    idx = free_list_.back();
    free_list_.pop_back();
    nodes_[idx] = {v, low, high, 0};
  } else {
    idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({v, low, high, 0});
  }
  ++internal_nodes_;
  ++dead_nodes_;
  inc_ref(low);
  inc_ref(high);
  table.emplace(k, idx);
  return NodeRef{idx};
}

void Manager::inc_ref(NodeRef n) {
  if (n.index <= 1) return;
  Node& x = nodes_[n.index];
  if (x.ref == 0) --dead_nodes_;
  ++x.ref;
}

void Manager::ref(NodeRef n) {
  check(n);
  inc_ref(n);
}

void Manager::deref(NodeRef n) {
  if (n.index <= 1) return;
  check(n);
  Node& x = nodes_[n.index];
  if (x.ref == 0) throw std::logic_error("deref below zero on BDD node " + std::to_string(n.index));
  if (--x.ref == 0) ++dead_nodes_;
}

void Manager::free_node(std::uint32_t index) {
  Node& x = nodes_[index];
  subtables_[x.var].erase(key(x.low, x.high));
  const NodeRef children[2] = {x.low, x.high};
  x.var = kFreeVar;
  free_list_.push_back(index);
  --dead_nodes_;
  --internal_nodes_;
  for (NodeRef c : children) dec_ref_and_free(c);
}

void Manager::dec_ref_and_free(NodeRef n) {
  if (n.index <= 1) return;
  Node& x = nodes_[n.index];
  if (--x.ref == 0) {
    ++dead_nodes_;
    free_node(n.index);
  }
}

std::size_t Manager::collect_garbage() {
  std::vector<std::uint32_t> dead;
  for (std::uint32_t i = 2; i < nodes_.size(); ++i)
    if (nodes_[i].var != kFreeVar && nodes_[i].ref == 0) dead.push_back(i);
  const std::size_t before = internal_nodes_;
  for (std::uint32_t i : dead)
    if (nodes_[i].var != kFreeVar && nodes_[i].ref == 0) free_node(i);
  cache_clear();
  ++gc_count_;
  return before - internal_nodes_;
}

void Manager::safe_point() {
  if (dead_nodes_ > options_.gc_dead_threshold) collect_garbage();
  if (options_.auto_reorder) {
    std::size_t live = live_node_count();
    if (live >= options_.reorder_floor && live >= 2 * live_at_last_reorder_) sift_reorder();
  }
}

// ---------------------------------------------------------------------------
// Computed cache

namespace {
inline std::size_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  std::uint64_t h = a * 0x9e3779b97f4a7c15ull;
  h ^= b + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
  h ^= c * 0xbf58476d1ce4e5b9ull + (h << 6) + (h >> 2);
  h ^= d * 0x94d049bb133111ebull + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h ^ (h >> 31));
}
}  // namespace

std::optional<NodeRef> Manager::cache_lookup(Op op, std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  const CacheEntry& e = cache_[mix(static_cast<std::uint64_t>(op), a, b, c) & (cache_.size() - 1)];
  if (e.op == op && e.a == a && e.b == b && e.c == c) return e.result;
  return std::nullopt;
}

void Manager::cache_insert(Op op, std::uint32_t a, std::uint32_t b, std::uint32_t c, NodeRef r) {
  cache_[mix(static_cast<std::uint64_t>(op), a, b, c) & (cache_.size() - 1)] = {op, a, b, c, r};
}

void Manager::cache_clear() { std::fill(cache_.begin(), cache_.end(), CacheEntry{}); }

// ---------------------------------------------------------------------------
// Apply

NodeRef Manager::ite(NodeRef f, NodeRef g, NodeRef h) {
  check(f);
  check(g);
  check(h);
  return ite_rec(f, g, h);
}

NodeRef Manager::ite_rec(NodeRef f, NodeRef g, NodeRef h) {
  if (f == kOne) return g;
  if (f == kZero) return h;
  if (g == f) g = kOne;
  if (h == f) h = kZero;
  if (g == h) return g;
  if (g == kOne && h == kZero) return f;
  // Commutative normal forms for AND and OR.
  if (h == kZero && g.index < f.index) std::swap(f, g);
  if (g == kOne && h.index < f.index) std::swap(f, h);

  if (auto hit = cache_lookup(Op::ite, f.index, g.index, h.index)) return *hit;

  const std::uint32_t lf = level(f), lg = level(g), lh = level(h);
  const std::uint32_t top = std::min({lf, lg, lh});
  const VarId v = level_to_var_[top];
  auto cof = [&](NodeRef n, std::uint32_t ln, bool hi) {
    if (ln != top) return n;
    return hi ? nodes_[n.index].high : nodes_[n.index].low;
  };
  NodeRef t = ite_rec(cof(f, lf, true), cof(g, lg, true), cof(h, lh, true));
  NodeRef e = ite_rec(cof(f, lf, false), cof(g, lg, false), cof(h, lh, false));
  NodeRef r = make(v, e, t);
  cache_insert(Op::ite, f.index, g.index, h.index, r);
  return r;
}

NodeRef Manager::cube(std::span<const VarId> vars) {
  std::vector<VarId> sorted(vars.begin(), vars.end());
  for (VarId v : sorted)
    if (v >= var_count()) throw std::out_of_range("unknown BDD variable " + std::to_string(v));
  std::sort(sorted.begin(), sorted.end(), [&](VarId a, VarId b) { return var_to_level_[a] > var_to_level_[b]; });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  NodeRef r = kOne;
  for (VarId v : sorted) r = make(v, kZero, r);
  return r;
}

NodeRef Manager::quantify(NodeRef f, NodeRef cube, Quantifier kind) {
  check(f);
  check(cube);
  return quantify_rec(f, cube, kind);
}

NodeRef Manager::quantify_rec(NodeRef f, NodeRef cube, Quantifier kind) {
  if (f.index <= 1) return f;
  const std::uint32_t lf = level(f);
  while (cube != kOne && level(cube) < lf) cube = nodes_[cube.index].high;
  if (cube == kOne) return f;

  const Op op = kind == Quantifier::exists ? Op::exists : Op::forall;
  if (auto hit = cache_lookup(op, f.index, cube.index, 0)) return *hit;

  const Node& fn = nodes_[f.index];
  const VarId v = fn.var;
  const NodeRef f0 = fn.low, f1 = fn.high;
  NodeRef r;
  if (level(cube) == lf) {
    const NodeRef rest = nodes_[cube.index].high;
    NodeRef lo = quantify_rec(f0, rest, kind);
    if (kind == Quantifier::exists && lo == kOne) {
      r = kOne;
    } else if (kind == Quantifier::forall && lo == kZero) {
      r = kZero;
    } else {
      NodeRef hi = quantify_rec(f1, rest, kind);
      r = kind == Quantifier::exists ? ite_rec(lo, kOne, hi) : ite_rec(lo, hi, kZero);
    }
  } else {
    NodeRef lo = quantify_rec(f0, cube, kind);
    NodeRef hi = quantify_rec(f1, cube, kind);
    r = make(v, lo, hi);
  }
  cache_insert(op, f.index, cube.index, 0, r);
  return r;
}

NodeRef Manager::and_exists(NodeRef f, NodeRef g, NodeRef cube) {
  check(f);
  check(g);
  check(cube);
  return and_exists_rec(f, g, cube);
}

NodeRef Manager::and_exists_rec(NodeRef f, NodeRef g, NodeRef cube) {
  if (f == kZero || g == kZero) return kZero;
  if (f == kOne && g == kOne) return kOne;
  if (f == kOne) return quantify_rec(g, cube, Quantifier::exists);
  if (g == kOne || f == g) return quantify_rec(f, cube, Quantifier::exists);
  if (g.index < f.index) std::swap(f, g);

  const std::uint32_t lf = level(f), lg = level(g);
  const std::uint32_t top = std::min(lf, lg);
  while (cube != kOne && level(cube) < top) cube = nodes_[cube.index].high;
  if (cube == kOne) return ite_rec(f, g, kZero);

  if (auto hit = cache_lookup(Op::and_exists, f.index, g.index, cube.index)) return *hit;

  const VarId v = level_to_var_[top];
  const NodeRef f0 = lf == top ? nodes_[f.index].low : f, f1 = lf == top ? nodes_[f.index].high : f;
  const NodeRef g0 = lg == top ? nodes_[g.index].low : g, g1 = lg == top ? nodes_[g.index].high : g;
  NodeRef r;
  if (level(cube) == top) {
    const NodeRef rest = nodes_[cube.index].high;
    NodeRef lo = and_exists_rec(f0, g0, rest);
    if (lo == kOne) {
      r = kOne;
    } else {
      NodeRef hi = and_exists_rec(f1, g1, rest);
      r = ite_rec(lo, kOne, hi);
    }
  } else {
    NodeRef lo = and_exists_rec(f0, g0, cube);
    NodeRef hi = and_exists_rec(f1, g1, cube);
    r = make(v, lo, hi);
  }
  cache_insert(Op::and_exists, f.index, g.index, cube.index, r);
  return r;
}

NodeRef Manager::vector_compose(NodeRef f, std::span<const std::optional<NodeRef>> subst) {
  check(f);
  for (const auto& s : subst)
    if (s) check(*s);
  std::unordered_map<std::uint32_t, NodeRef> memo;
  std::function<NodeRef(NodeRef)> rec = [&](NodeRef n) -> NodeRef {
    if (n.index <= 1) return n;
    if (auto it = memo.find(n.index); it != memo.end()) return it->second;
    const Node& x = nodes_[n.index];
    const VarId v = x.var;
    const NodeRef lo_in = x.low, hi_in = x.high;
    NodeRef hi = rec(hi_in);
    NodeRef lo = rec(lo_in);
    NodeRef s = v < subst.size() && subst[v] ? *subst[v] : make(v, kZero, kOne);
    NodeRef r = ite_rec(s, hi, lo);
    memo.emplace(n.index, r);
    return r;
  };
  return rec(f);
}

NodeRef Manager::cofactor(NodeRef f, VarId v, bool value) {
  check(f);
  if (v >= var_count()) throw std::out_of_range("unknown BDD variable " + std::to_string(v));
  return cofactor_rec(f, v, value);
}

NodeRef Manager::cofactor_rec(NodeRef f, VarId v, bool value) {
  if (f.index <= 1) return f;
  const std::uint32_t lf = level(f), lv = var_to_level_[v];
  if (lf > lv) return f;
  const Node& x = nodes_[f.index];
  if (lf == lv) return value ? x.high : x.low;
  const Op op = value ? Op::cofactor1 : Op::cofactor0;
  if (auto hit = cache_lookup(op, f.index, v, 0)) return *hit;
  const VarId fv = x.var;
  const NodeRef f0 = x.low, f1 = x.high;
  NodeRef lo = cofactor_rec(f0, v, value);
  NodeRef hi = cofactor_rec(f1, v, value);
  NodeRef r = make(fv, lo, hi);
  cache_insert(op, f.index, v, 0, r);
  return r;
}

NodeRef Manager::restrict(NodeRef f, NodeRef care) {
  check(f);
  check(care);
  if (care == kZero) return f;
  return restrict_rec(f, care);
}

NodeRef Manager::restrict_rec(NodeRef f, NodeRef care) {
  if (care == kOne || f.index <= 1) return f;
  if (f == care) return kOne;
  if (auto hit = cache_lookup(Op::restrict, f.index, care.index, 0)) return *hit;
  const std::uint32_t lf = level(f), lc = level(care);
  NodeRef r;
  const Node& c = nodes_[care.index];
  if (lc < lf) {
    // care's top variable is irrelevant to f: drop it by existential abstraction.
    r = restrict_rec(f, ite_rec(c.low, kOne, c.high));
  } else {
    const Node& x = nodes_[f.index];
    const VarId v = x.var;
    const NodeRef f0 = x.low, f1 = x.high;
    NodeRef c0 = care, c1 = care;
    if (lc == lf) {
      c0 = c.low;
      c1 = c.high;
    }
    if (c1 == kZero) {
      r = restrict_rec(f0, c0);
    } else if (c0 == kZero) {
      r = restrict_rec(f1, c1);
    } else {
      NodeRef lo = restrict_rec(f0, c0);
      NodeRef hi = restrict_rec(f1, c1);
      r = make(v, lo, hi);
    }
  }
  cache_insert(Op::restrict, f.index, care.index, 0, r);
  return r;
}

// ---------------------------------------------------------------------------
// Reordering

void Manager::swap_adjacent(std::uint32_t lvl) {
  if (lvl + 1 >= level_to_var_.size()) throw std::out_of_range("swap_adjacent past the last level");
  const bool was_reordering = std::exchange(reordering_, true);
  const VarId x = level_to_var_[lvl];
  const VarId y = level_to_var_[lvl + 1];

  // x-nodes with a y child must be rebuilt as y-nodes; the rest keep their
  // identity and simply end up one level lower.
  std::vector<std::uint32_t> moved;
  for (auto it = subtables_[x].begin(); it != subtables_[x].end();) {
    const Node& n = nodes_[it->second];
    if (nodes_[n.low.index].var == y || nodes_[n.high.index].var == y) {
      moved.push_back(it->second);
      it = subtables_[x].erase(it);
    } else {
      ++it;
    }
  }

  var_to_level_[x] = lvl + 1;
  var_to_level_[y] = lvl;
  level_to_var_[lvl] = y;
  level_to_var_[lvl + 1] = x;

  for (std::uint32_t idx : moved) {
    const NodeRef f0 = nodes_[idx].low, f1 = nodes_[idx].high;
    const bool y0 = nodes_[f0.index].var == y, y1 = nodes_[f1.index].var == y;
    const NodeRef f00 = y0 ? nodes_[f0.index].low : f0, f01 = y0 ? nodes_[f0.index].high : f0;
    const NodeRef f10 = y1 ? nodes_[f1.index].low : f1, f11 = y1 ? nodes_[f1.index].high : f1;
    // new node: y ? (x ? f11 : f01) : (x ? f10 : f00)
    NodeRef new_high = make(x, f01, f11);
    inc_ref(new_high);
    NodeRef new_low = make(x, f00, f10);
    inc_ref(new_low);
    Node& n = nodes_[idx];
    n.var = y;
    n.low = new_low;
    n.high = new_high;
    subtables_[y].emplace(key(new_low, new_high), idx);
    dec_ref_and_free(f0);
    dec_ref_and_free(f1);
  }
  reordering_ = was_reordering;
}

void Manager::sift_variable(VarId v) {
  const std::uint32_t n = static_cast<std::uint32_t>(level_to_var_.size());
  if (n < 2) return;
  std::size_t best = sift_total();
  std::uint32_t best_level = var_to_level_[v];

  auto down = [&] {
    while (var_to_level_[v] + 1 < n) {
      swap_adjacent(var_to_level_[v]);
      std::size_t size = sift_total();
      if (size < best) {
        best = size;
        best_level = var_to_level_[v];
      }
      if (static_cast<double>(size) > options_.max_growth * static_cast<double>(best)) break;
    }
  };
  auto up = [&] {
    while (var_to_level_[v] > 0) {
      swap_adjacent(var_to_level_[v] - 1);
      std::size_t size = sift_total();
      if (size < best) {
        best = size;
        best_level = var_to_level_[v];
      }
      if (static_cast<double>(size) > options_.max_growth * static_cast<double>(best)) break;
    }
  };
  if (var_to_level_[v] > n / 2) {
    down();
    up();
  } else {
    up();
    down();
  }
  while (var_to_level_[v] < best_level) swap_adjacent(var_to_level_[v]);
  while (var_to_level_[v] > best_level) swap_adjacent(var_to_level_[v] - 1);
}

std::vector<VarId> Manager::sift_reorder() {
  collect_garbage();
  std::vector<VarId> vars(level_to_var_);
  std::stable_sort(vars.begin(), vars.end(),
                   [&](VarId a, VarId b) { return subtables_[a].size() > subtables_[b].size(); });
  for (VarId v : vars) sift_variable(v);
  cache_clear();
  ++reorder_count_;
  live_at_last_reorder_ = live_node_count();
  return level_to_var_;
}

// ---------------------------------------------------------------------------
// Inspection

bool Manager::eval(NodeRef f, std::span<const bool> values_by_var) const {
  check(f);
  while (f.index > 1) {
    const Node& x = nodes_[f.index];
    if (x.var >= values_by_var.size())
      throw std::out_of_range("missing assignment for BDD variable " + std::to_string(x.var));
    f = values_by_var[x.var] ? x.high : x.low;
  }
  return f == kOne;
}

bool Manager::eval(NodeRef f, const std::unordered_map<VarId, bool>& assignment) const {
  check(f);
  while (f.index > 1) {
    const Node& x = nodes_[f.index];
    auto it = assignment.find(x.var);
    if (it == assignment.end())
      throw std::out_of_range("missing assignment for BDD variable " + std::to_string(x.var));
    f = it->second ? x.high : x.low;
  }
  return f == kOne;
}

std::size_t Manager::node_count(NodeRef f) const { return node_count(std::span<const NodeRef>(&f, 1)); }

std::size_t Manager::node_count(std::span<const NodeRef> roots) const {
  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeRef> stack;
  for (NodeRef r : roots) {
    check(r);
    stack.push_back(r);
  }
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (n.index <= 1 || !seen.insert(n.index).second) continue;
    stack.push_back(nodes_[n.index].low);
    stack.push_back(nodes_[n.index].high);
  }
  return seen.size();
}

std::vector<VarId> Manager::support(NodeRef f) const {
  check(f);
  std::unordered_set<std::uint32_t> seen;
  std::vector<bool> in_support(var_count(), false);
  std::vector<NodeRef> stack{f};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (n.index <= 1 || !seen.insert(n.index).second) continue;
    in_support[nodes_[n.index].var] = true;
    stack.push_back(nodes_[n.index].low);
    stack.push_back(nodes_[n.index].high);
  }
  std::vector<VarId> out;
  for (VarId v = 0; v < in_support.size(); ++v)
    if (in_support[v]) out.push_back(v);
  return out;
}

std::optional<std::vector<bool>> Manager::pick_minterm(NodeRef f) const {
  check(f);
  if (f == kZero) return std::nullopt;
  std::vector<bool> values(var_count(), false);
  // Without complement edges every non-FALSE node has a path to TRUE; the
  // low branch is preferred whenever it is not FALSE.
  while (f.index > 1) {
    const Node& x = nodes_[f.index];
    if (x.low != kZero) {
      f = x.low;
    } else {
      values[x.var] = true;
      f = x.high;
    }
  }
  return values;
}

std::string Manager::to_dot(NodeRef f, const std::vector<std::string>& var_names) const {
  check(f);
  std::ostringstream os;
  os << "digraph bdd {\n  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeRef> stack{f};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (n.index <= 1 || !seen.insert(n.index).second) continue;
    const Node& x = nodes_[n.index];
    os << "  n" << n.index << " [label=\"";
    if (x.var < var_names.size())
      os << var_names[x.var];
    else
      os << 'x' << x.var;
    os << "\"];\n";
    os << "  n" << n.index << " -> n" << x.low.index << " [style=dashed];\n";
    os << "  n" << n.index << " -> n" << x.high.index << ";\n";
    stack.push_back(x.low);
    stack.push_back(x.high);
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Bdd

Manager& Bdd::same(const Bdd& o) const {
  if (!mgr_ || !o.mgr_) throw std::invalid_argument("operation on an empty Bdd");
  if (mgr_ != o.mgr_) throw std::invalid_argument("BDD operands from different managers");
  mgr_->safe_point();
  return *mgr_;
}

Bdd Bdd::operator!() const {
  Manager& m = same(*this);
  return Bdd(m, m.apply_not(node_));
}
Bdd Bdd::operator&(const Bdd& o) const {
  Manager& m = same(o);
  return Bdd(m, m.apply_and(node_, o.node_));
}
Bdd Bdd::operator|(const Bdd& o) const {
  Manager& m = same(o);
  return Bdd(m, m.apply_or(node_, o.node_));
}
Bdd Bdd::operator^(const Bdd& o) const {
  Manager& m = same(o);
  return Bdd(m, m.apply_xor(node_, o.node_));
}
Bdd Bdd::implies(const Bdd& o) const {
  Manager& m = same(o);
  return Bdd(m, m.apply_implies(node_, o.node_));
}
Bdd Bdd::iff(const Bdd& o) const {
  Manager& m = same(o);
  return Bdd(m, m.apply_iff(node_, o.node_));
}
Bdd Bdd::ite(const Bdd& f, const Bdd& g, const Bdd& h) {
  f.same(g);
  Manager& m = f.same(h);
  return Bdd(m, m.ite(f.node_, g.node_, h.node_));
}
Bdd Bdd::exists(const Bdd& cube) const {
  Manager& m = same(cube);
  return Bdd(m, m.exists(node_, cube.node_));
}
Bdd Bdd::forall(const Bdd& cube) const {
  Manager& m = same(cube);
  return Bdd(m, m.forall(node_, cube.node_));
}
Bdd Bdd::and_exists(const Bdd& g, const Bdd& cube) const {
  same(g);
  Manager& m = same(cube);
  return Bdd(m, m.and_exists(node_, g.node_, cube.node_));
}
Bdd Bdd::compose(const std::vector<std::optional<Bdd>>& subst) const {
  Manager& m = same(*this);
  std::vector<std::optional<NodeRef>> raw(subst.size());
  for (std::size_t i = 0; i < subst.size(); ++i)
    if (subst[i]) {
      if (&subst[i]->manager() != &m) throw std::invalid_argument("BDD operands from different managers");
      raw[i] = subst[i]->node();
    }
  return Bdd(m, m.vector_compose(node_, raw));
}
Bdd Bdd::cofactor(VarId v, bool value) const {
  Manager& m = same(*this);
  return Bdd(m, m.cofactor(node_, v, value));
}
Bdd Bdd::restrict(const Bdd& care) const {
  Manager& m = same(care);
  return Bdd(m, m.restrict(node_, care.node_));
}

}  // namespace aigsynth::bdd
