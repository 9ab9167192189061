#include "pgmlab/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "pgmlab/error.hpp"

namespace pgmlab {

namespace {

void check_order(std::size_t order, std::size_t max_dim) {
  if (order > max_dim) {
    throw GuardError("group order " + std::to_string(order) + " exceeds dimension guard " +
                     std::to_string(max_dim));
  }
}

std::string permutation_label(const std::vector<int>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

std::string FamilyTag::to_string() const {
  std::string base;
  switch (kind) {
    case Family::Cyclic: base = "cyclic:n=" + std::to_string(param); break;
    case Family::Dihedral: base = "dihedral:n=" + std::to_string(param); break;
    case Family::Symmetric: base = "symmetric:n=" + std::to_string(param); break;
    case Family::Affine: base = "affine:p=" + std::to_string(param); break;
    case Family::Heisenberg: base = "heisenberg:p=" + std::to_string(param); break;
    case Family::Custom: base = "custom:order=" + std::to_string(param); break;
  }
  if (exponent > 1) base += "^" + std::to_string(exponent);
  return base;
}

Group::Group(std::vector<Element> table, std::size_t order, std::vector<std::string> labels,
             FamilyTag family)
    : order_(order),
      table_(std::move(table)),
      inv_(order, 0),
      labels_(std::move(labels)),
      family_(family) {
  if (order_ == 0 || table_.size() != order_ * order_) {
    throw InputError("Cayley table size does not match order");
  }
  if (labels_.size() != order_) {
    labels_.resize(order_);
    for (std::size_t i = 0; i < order_; ++i) labels_[i] = std::to_string(i);
  }
  for (std::size_t x = 0; x < order_; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < order_; ++y) {
      if (table_[x * order_ + y] == 0) {
        inv_[x] = static_cast<Element>(y);
        found = true;
        break;
      }
    }
    if (!found) throw InputError("element " + std::to_string(x) + " has no inverse");
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

GroupPtr make_cyclic(int n, std::size_t max_dim) {
  if (n < 1) throw InputError("cyclic group needs n >= 1");
  const auto order = static_cast<std::size_t>(n);
  check_order(order, max_dim);
  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  for (int x = 0; x < n; ++x) {
    labels[x] = x == 0 ? "e" : "g^" + std::to_string(x);
    for (int y = 0; y < n; ++y) t[x * order + y] = static_cast<Element>((x + y) % n);
  }
  return std::make_shared<const Group>(std::move(t), order, std::move(labels),
                                       FamilyTag{Family::Cyclic, n});
}

GroupPtr make_dihedral(int n, std::size_t max_dim) {
  if (n < 3) throw InputError("dihedral group needs n >= 3");
  const auto order = static_cast<std::size_t>(2 * n);
  check_order(order, max_dim);
  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  for (int x = 0; x < 2 * n; ++x) {
    const int a = x % n, f = x / n;
    std::string rot = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
    labels[x] = f == 0 ? (a == 0 ? "e" : rot) : (a == 0 ? "s" : rot + " s");
    for (int y = 0; y < 2 * n; ++y) {
      const int b = y % n, g = y / n;
      // r^a s^f r^b s^g = r^(a + (-1)^f b) s^(f+g)
      const int c = ((f == 0 ? a + b : a - b) % n + n) % n;
      t[x * order + y] = static_cast<Element>(((f + g) % 2) * n + c);
    }
  }
  return std::make_shared<const Group>(std::move(t), order, std::move(labels),
                                       FamilyTag{Family::Dihedral, n});
}

GroupPtr make_symmetric(int n, std::size_t max_dim) {
  if (n < 1 || n > 10) throw InputError("symmetric group needs 1 <= n <= 10");
  const auto order = static_cast<std::size_t>(factorial(n));
  check_order(order, max_dim);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);

  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  std::vector<int> q(n);
  for (std::size_t x = 0; x < order; ++x) {
    labels[x] = permutation_label(perms[x]);
    for (std::size_t y = 0; y < order; ++y) {
      for (int i = 0; i < n; ++i) q[i] = perms[x][perms[y][i]];
      t[x * order + y] = index.at(q);
    }
  }
  return std::make_shared<const Group>(std::move(t), order, std::move(labels),
                                       FamilyTag{Family::Symmetric, n});
}

GroupPtr make_affine(int p, std::size_t max_dim) {
  if (!is_prime(p)) throw InputError("affine group needs prime p, got " + std::to_string(p));
  const auto order = static_cast<std::size_t>(p * (p - 1));
  check_order(order, max_dim);
  auto idx = [p](int a, int b) { return static_cast<Element>((a - 1) * p + b); };
  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  for (int a1 = 1; a1 < p; ++a1) {
    for (int b1 = 0; b1 < p; ++b1) {
      const Element x = idx(a1, b1);
      labels[x] = x == 0 ? "e" : "u->" + std::to_string(a1) + "u+" + std::to_string(b1);
      for (int a2 = 1; a2 < p; ++a2) {
        for (int b2 = 0; b2 < p; ++b2) {
          // (a1 u + b1) o (a2 u + b2) = a1 a2 u + a1 b2 + b1
          t[x * order + idx(a2, b2)] = idx((a1 * a2) % p, (a1 * b2 + b1) % p);
        }
      }
    }
  }
  return std::make_shared<const Group>(std::move(t), order, std::move(labels),
                                       FamilyTag{Family::Affine, p});
}

GroupPtr make_heisenberg(int p, std::size_t max_dim) {
  if (!is_prime(p)) {
    throw InputError("heisenberg group needs prime p, got " + std::to_string(p));
  }
  const auto order = static_cast<std::size_t>(p * p * p);
  check_order(order, max_dim);
  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const int a = static_cast<int>(x) / (p * p), b = (static_cast<int>(x) / p) % p,
              c = static_cast<int>(x) % p;
    labels[x] = x == 0 ? "e"
                       : "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      const int a2 = static_cast<int>(y) / (p * p), b2 = (static_cast<int>(y) / p) % p,
                c2 = static_cast<int>(y) % p;
      const int na = (a + a2) % p, nb = (b + b2) % p, nc = (c + c2 + a * b2) % p;
      t[x * order + y] = static_cast<Element>(na * p * p + nb * p + nc);
    }
  }
  return std::make_shared<const Group>(std::move(t), order, std::move(labels),
                                       FamilyTag{Family::Heisenberg, p});
}

GroupCheck check_group(const Group& g, std::uint64_t seed) {
  GroupCheck c;
  const std::size_t n = g.order();
  c.latin = true;
  for (std::size_t x = 0; x < n && c.latin; ++x) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      const Element r = g.mult(static_cast<Element>(x), static_cast<Element>(y));
      const Element s = g.mult(static_cast<Element>(y), static_cast<Element>(x));
      if (r >= n || s >= n || row[r] || col[s]) {
        c.latin = false;
        break;
      }
      row[r] = col[s] = true;
    }
  }
  if (!c.latin) return c;
  c.identity = true;
  c.inverses = true;
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Element>(x);
    if (g.mult(0, e) != e || g.mult(e, 0) != e) c.identity = false;
    if (g.mult(e, g.inv(e)) != 0 || g.mult(g.inv(e), e) != 0) c.inverses = false;
  }
  c.associative = true;
  auto assoc = [&](Element x, Element y, Element z) {
    return g.mult(g.mult(x, y), z) == g.mult(x, g.mult(y, z));
  };
  if (n <= 256) {
    for (Element x = 0; x < n && c.associative; ++x)
      for (Element y = 0; y < n && c.associative; ++y)
        for (Element z = 0; z < n; ++z)
          if (!assoc(x, y, z)) {
            c.associative = false;
            break;
          }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (int i = 0; i < 100000; ++i) {
      if (!assoc(pick(rng), pick(rng), pick(rng))) {
        c.associative = false;
        break;
      }
    }
  }
  return c;
}

GroupPtr group_from_table(std::size_t order, const std::vector<std::vector<Element>>& mult,
                          std::size_t max_dim) {
  if (order == 0) throw InputError("group order must be positive");
  check_order(order, max_dim);
  if (mult.size() != order) throw InputError("Cayley table has wrong number of rows");
  std::vector<Element> t;
  t.reserve(order * order);
  for (const auto& row : mult) {
    if (row.size() != order) throw InputError("Cayley table row has wrong length");
    for (Element v : row) {
      if (v >= order) throw InputError("Cayley table entry out of range");
      t.push_back(v);
    }
  }
  for (std::size_t x = 0; x < order; ++x) {
    if (t[x] != x || t[x * order] != x) {
      throw InputError("element 0 must be the identity");
    }
  }
  // Latin rows guarantee every element has a right inverse, so the constructor
  // succeeds; the remaining axioms are checked below.
  std::vector<bool> seen(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t y = 0; y < order; ++y) {
      if (seen[t[x * order + y]]) throw InputError("Cayley table is not a Latin square");
      seen[t[x * order + y]] = true;
    }
  }
  auto g = std::make_shared<const Group>(std::move(t), order, std::vector<std::string>{},
                                         FamilyTag{Family::Custom, static_cast<int>(order)});
  const GroupCheck c = check_group(*g);
  if (!c.latin) throw InputError("Cayley table is not a Latin square");
  if (!c.identity) throw InputError("element 0 is not a two-sided identity");
  if (!c.inverses) throw InputError("inverses are not two-sided");
  if (!c.associative) throw InputError("Cayley table is not associative");
  return g;
}

GroupPtr group_power(const GroupPtr& g, int k, std::size_t max_dim) {
  if (k < 1) throw InputError("group power needs k >= 1");
  const std::size_t n = g->order();
  std::size_t order = 1;
  for (int r = 0; r < k; ++r) {
    order *= n;
    check_order(order, max_dim);
  }
  if (k == 1) return g;

  std::vector<Element> t(order * order);
  std::vector<std::string> labels(order);
  std::vector<Element> xs(k), ys(k);
  auto unpack = [&](std::size_t v, std::vector<Element>& out) {
    for (int r = k - 1; r >= 0; --r) {
      out[r] = static_cast<Element>(v % n);
      v /= n;
    }
  };
  for (std::size_t x = 0; x < order; ++x) {
    unpack(x, xs);
    std::string lab = "(";
    for (int r = 0; r < k; ++r) lab += (r ? "," : "") + g->label(xs[r]);
    labels[x] = lab + ")";
    for (std::size_t y = 0; y < order; ++y) {
      unpack(y, ys);
      std::size_t z = 0;
      for (int r = 0; r < k; ++r) z = z * n + g->mult(xs[r], ys[r]);
      t[x * order + y] = static_cast<Element>(z);
    }
  }
  FamilyTag tag = g->family();
  tag.exponent *= k;
  return std::make_shared<const Group>(std::move(t), order, std::move(labels), tag);
}

bool is_closed(const Group& g, const std::vector<Element>& elements) {
  std::vector<bool> member(g.order(), false);
  for (Element e : elements) {
    if (e >= g.order()) return false;
    member[e] = true;
  }
  if (!member[0]) return false;
  for (Element a : elements) {
    if (!member[g.inv(a)]) return false;
    for (Element b : elements) {
      if (!member[g.mult(a, b)]) return false;
    }
  }
  return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(parent_->order(), false);
  for (Element e : elements_) {
    if (e >= parent_->order()) throw InputError("subgroup element out of range");
    member_[e] = true;
  }
}

Subgroup subgroup_generate(const GroupPtr& g, const std::vector<Element>& gens) {
  for (Element x : gens) {
    if (x >= g->order()) {
      throw InputError("generator index " + std::to_string(x) + " out of range");
    }
  }
  std::vector<bool> member(g->order(), false);
  std::vector<Element> found{0};
  member[0] = true;
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Element s : gens) {
      const Element y = g->mult(found[i], s);
      if (!member[y]) {
        member[y] = true;
        found.push_back(y);
      }
    }
  }
  return Subgroup(g, std::move(found));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup whole_group(const GroupPtr& g) {
  std::vector<Element> all(g->order());
  std::iota(all.begin(), all.end(), Element{0});
  return Subgroup(g, std::move(all));
}

Subgroup conjugate_subgroup(const Subgroup& h, Element g) {
  const Group& G = h.group();
  std::vector<Element> out;
  out.reserve(h.order());
  for (Element x : h.elements()) out.push_back(G.conj(x, g));
  return Subgroup(h.parent(), std::move(out));
}

ConjugateFamily conjugate_family(const Subgroup& h) {
  const std::size_t n = h.group().order();
  std::map<std::vector<Element>, std::size_t> seen;
  std::vector<Subgroup> found;
  std::vector<Element> reps;
  std::vector<std::size_t> raw_map(n);
  for (Element g = 0; g < n; ++g) {
    Subgroup c = conjugate_subgroup(h, g);
    auto [it, inserted] = seen.emplace(c.elements(), found.size());
    if (inserted) {
      found.push_back(std::move(c));
      reps.push_back(g);
    }
    raw_map[g] = it->second;
  }
  // std::map iterates keys lexicographically; that is the canonical order.
  std::vector<std::size_t> rank(found.size());
  std::size_t pos = 0;
  for (const auto& [key, idx] : seen) rank[idx] = pos++;

  ConjugateFamily fam{h, {}, {}, {}};
  fam.conjugates.resize(found.size(), h);
  fam.rep.resize(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    fam.conjugates[rank[i]] = found[i];
    fam.rep[rank[i]] = reps[i];
  }
  fam.coset_map.resize(n);
  for (std::size_t g = 0; g < n; ++g) fam.coset_map[g] = rank[raw_map[g]];
  return fam;
}

Subgroup normalizer(const Subgroup& h) {
  std::vector<Element> out;
  for (Element g = 0; g < h.group().order(); ++g) {
    if (conjugate_subgroup(h, g) == h) out.push_back(g);
  }
  return Subgroup(h.parent(), std::move(out));
}

Subgroup normal_core(const Subgroup& h) {
  std::vector<Element> core = h.elements();
  for (const Subgroup& c : conjugate_family(h).conjugates) {
    std::vector<Element> next;
    std::set_intersection(core.begin(), core.end(), c.elements().begin(), c.elements().end(),
                          std::back_inserter(next));
    core = std::move(next);
  }
  return Subgroup(h.parent(), std::move(core));
}

bool is_normal(const Subgroup& h) {
  for (Element g = 0; g < h.group().order(); ++g) {
    for (Element x : h.elements()) {
      if (!h.contains(h.group().conj(x, g))) return false;
    }
  }
  return true;
}

Partition left_cosets(const Subgroup& h) {
  const Group& G = h.group();
  std::vector<bool> done(G.order(), false);
  Partition blocks;
  for (Element c = 0; c < G.order(); ++c) {
    if (done[c]) continue;
    std::vector<Element> block;
    for (Element x : h.elements()) block.push_back(G.mult(c, x));
    std::sort(block.begin(), block.end());
    for (Element x : block) done[x] = true;
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Partition double_cosets(const Subgroup& h) {
  const Group& G = h.group();
  std::vector<bool> done(G.order(), false);
  Partition blocks;
  for (Element g = 0; g < G.order(); ++g) {
    if (done[g]) continue;
    std::vector<Element> block;
    for (Element a : h.elements()) {
      const Element ag = G.mult(a, g);
      for (Element b : h.elements()) {
        const Element x = G.mult(ag, b);
        if (!done[x]) {
          done[x] = true;
          block.push_back(x);
        }
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Partition conjugacy_classes(const Group& g) {
  std::vector<bool> done(g.order(), false);
  Partition classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Element> cls;
    for (Element y = 0; y < g.order(); ++y) {
      const Element c = g.conj(x, y);
      if (!done[c]) {
        done[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup subgroup_power(const Subgroup& h, const GroupPtr& power, int k) {
  const std::size_t n = h.group().order();
  std::size_t expected = 1;
  for (int r = 0; r < k; ++r) expected *= n;
  if (power->order() != expected) throw InputError("power group does not match subgroup");
  std::vector<Element> cur{0};
  for (int r = 0; r < k; ++r) {
    std::vector<Element> next;
    next.reserve(cur.size() * h.order());
    for (Element prefix : cur)
      for (Element x : h.elements()) next.push_back(static_cast<Element>(prefix * n + x));
    cur = std::move(next);
  }
  return Subgroup(power, std::move(cur));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  if (g->order() > 512) throw GuardError("subgroup enumeration limited to order <= 512");
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> pending;
  auto add = [&](const Subgroup& s) {
    if (found.insert(s.elements()).second) pending.push_back(s.elements());
  };
  std::vector<std::vector<Element>> cyclic;
  for (Element x = 0; x < g->order(); ++x) {
    Subgroup s = subgroup_generate(g, {x});
    if (found.insert(s.elements()).second) cyclic.push_back(s.elements());
  }
  pending = cyclic;
  // Every subgroup is a join of cyclic subgroups; extend joins until stable.
  while (!pending.empty()) {
    std::vector<std::vector<Element>> batch;
    batch.swap(pending);
    for (const auto& a : batch) {
      for (const auto& c : cyclic) {
        if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
        std::vector<Element> gens = a;
        gens.insert(gens.end(), c.begin(), c.end());
        add(subgroup_generate(g, gens));
      }
    }
  }
  std::vector<Subgroup> out;
  for (const auto& e : found) out.emplace_back(g, e);
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements() < b.elements();
  });
  return out;
}

}  // namespace pgmlab
