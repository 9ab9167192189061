#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pgmlab {

using Element = std::uint32_t;

/// Default ceiling on group orders and dense operator dimensions.
inline constexpr std::size_t kDefaultMaxDim = 2048;

enum class Family { Cyclic, Dihedral, Symmetric, Affine, Heisenberg, Custom };

/// Records which constructor produced a group. `exponent` > 1 marks a direct
/// power of the base family.
struct FamilyTag {
  Family kind = Family::Custom;
  int param = 0;
  int exponent = 1;

  std::string to_string() const;
  bool operator==(const FamilyTag&) const = default;
};

/// Finite group stored as a Cayley table. Element 0 is the identity.
///
/// Element enumeration per family:
///   cyclic n      x -> x
///   dihedral n    r^a s^f at index f*n + a (rotations, then reflections)
///   symmetric n   permutations in lexicographic one-line order, (xy)(i) = x(y(i))
///   affine p      u -> a*u + b at index (a-1)*p + b, (xy)(u) = x(y(u))
///   heisenberg p  (a,b,c) at index a*p^2 + b*p + c,
///                 (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
class Group {
 public:
  Group(std::vector<Element> table, std::size_t order, std::vector<std::string> labels,
        FamilyTag family);

  std::size_t order() const { return order_; }
  Element mult(Element x, Element y) const { return table_[x * order_ + y]; }
  Element inv(Element x) const { return inv_[x]; }
  Element conj(Element h, Element g) const { return mult(mult(inv(g), h), g); }
  static constexpr Element identity() { return 0; }
  const std::string& label(Element x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const FamilyTag& family() const { return family_; }
  const std::vector<Element>& table() const { return table_; }

 private:
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inv_;
  std::vector<std::string> labels_;
  FamilyTag family_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Closed subset of a group, elements kept sorted.
class Subgroup {
 public:
  /// Wraps an element set without a closure check; use subgroup_generate or
  /// check_subgroup for untrusted input.
  Subgroup(GroupPtr parent, std::vector<Element> elements);

  const GroupPtr& parent() const { return parent_; }
  const Group& group() const { return *parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const { return member_[x]; }

  bool operator==(const Subgroup& other) const { return elements_ == other.elements_; }
  bool operator<(const Subgroup& other) const { return elements_ < other.elements_; }

 private:
  GroupPtr parent_;
  std::vector<Element> elements_;
  std::vector<bool> member_;
};

/// Distinct conjugates H^g in canonical (lexicographic) order.
struct ConjugateFamily {
  Subgroup subgroup;
  std::vector<Subgroup> conjugates;
  std::vector<Element> rep;              ///< one g per conjugate with H^g = conjugates[i]
  std::vector<std::size_t> coset_map;    ///< g -> index of H^g

  std::size_t size() const { return conjugates.size(); }
};

using Partition = std::vector<std::vector<Element>>;

// Constructors -------------------------------------------------------------

GroupPtr make_cyclic(int n, std::size_t max_dim = kDefaultMaxDim);
GroupPtr make_dihedral(int n, std::size_t max_dim = kDefaultMaxDim);
GroupPtr make_symmetric(int n, std::size_t max_dim = kDefaultMaxDim);
GroupPtr make_affine(int p, std::size_t max_dim = kDefaultMaxDim);
GroupPtr make_heisenberg(int p, std::size_t max_dim = kDefaultMaxDim);

/// Builds a group from a user-supplied Cayley table after full validation.
/// Associativity is checked exhaustively up to order 256 and on 10^5
/// seeded random triples above that.
GroupPtr group_from_table(std::size_t order, const std::vector<std::vector<Element>>& mult,
                          std::size_t max_dim = kDefaultMaxDim);

/// Direct power G^k, lexicographic register-major indexing (register 1 most
/// significant).
GroupPtr group_power(const GroupPtr& g, int k, std::size_t max_dim = kDefaultMaxDim);

bool is_prime(int p);

// Validation ---------------------------------------------------------------

struct GroupCheck {
  bool latin = false;
  bool identity = false;
  bool inverses = false;
  bool associative = false;
  bool ok() const { return latin && identity && inverses && associative; }
};

GroupCheck check_group(const Group& g, std::uint64_t seed = 0x5eed);

/// True if the set contains the identity and is closed under mult and inverse.
bool is_closed(const Group& g, const std::vector<Element>& elements);

// Subgroup machinery -------------------------------------------------------

Subgroup subgroup_generate(const GroupPtr& g, const std::vector<Element>& gens);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);

/// {g^-1 h g : h in H}
Subgroup conjugate_subgroup(const Subgroup& h, Element g);
ConjugateFamily conjugate_family(const Subgroup& h);
Subgroup normalizer(const Subgroup& h);
Subgroup normal_core(const Subgroup& h);
bool is_normal(const Subgroup& h);

/// Blocks cH, ordered by smallest element.
Partition left_cosets(const Subgroup& h);
/// Blocks HgH, ordered by smallest element.
Partition double_cosets(const Subgroup& h);
/// Conjugacy classes of the group, ordered by smallest element.
Partition conjugacy_classes(const Group& g);

/// H^k inside G^k where `power` was produced by group_power(H.parent(), k).
Subgroup subgroup_power(const Subgroup& h, const GroupPtr& power, int k);

/// Every subgroup of a small group, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

}  // namespace pgmlab
