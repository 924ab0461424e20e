#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gennum/padic.hpp"

namespace gennum::pgroup {

using padic::RMatrix;
using padic::Zmod;

// affine map x -> M x + v on (Z/p^K)^n
struct AffineElement {
  Mat m;
  Vec v;

  static AffineElement identity(Int n);
  static AffineElement make(const Zmod& ring, const Mat& m, const Vec& v);
  static AffineElement linear(const Zmod& ring, const Mat& m);
  static AffineElement translation(const Zmod& ring, const Vec& v);
};

AffineElement compose(const Zmod& ring, const AffineElement& a, const AffineElement& b);
AffineElement inverse(const Zmod& ring, const AffineElement& a);
bool affine_equal(const AffineElement& a, const AffineElement& b);

struct ClosureOptions {
  Int budget = Int{1} << 21;  // cap on the number of stored elements
};

// a finite group of affine maps, closed under composition, with dense ids
class FiniteGroup {
 public:
  static std::shared_ptr<const FiniteGroup> closure(const Zmod& ring, Int n,
                                                    const std::vector<AffineElement>& gens,
                                                    const ClosureOptions& opts = {});

  Int order() const { return static_cast<Int>(count_); }
  Int prime() const { return ring_.p; }
  Int order_exp() const { return order_exp_; }
  Int dim() const { return n_; }
  const Zmod& ring() const { return ring_; }
  const std::vector<std::int32_t>& generator_ids() const { return gen_ids_; }

  std::int32_t identity_id() const { return 0; }
  std::int32_t compose_ids(std::int32_t a, std::int32_t b) const;
  std::int32_t inverse_id(std::int32_t a) const;
  std::int32_t pow_id(std::int32_t a, Int e) const;
  std::int32_t id_of(const AffineElement& g) const;  // -1 if absent
  AffineElement element(std::int32_t id) const;

 private:
  FiniteGroup() = default;

  std::int32_t find_or_insert(const std::uint64_t* words, bool insert_allowed);
  std::int32_t lookup(const std::uint64_t* words) const;
  void pack(const AffineElement& g, std::uint64_t* words) const;
  void grow_table();

  Zmod ring_;
  Int n_ = 0;
  Int order_exp_ = 0;
  Int words_per_elem_ = 0;
  Int bits_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> storage_;     // count_ * words_per_elem_
  std::vector<std::int32_t> table_;        // open addressing, -1 empty
  std::vector<std::int32_t> gen_ids_;
  friend struct ClosureBuilder;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// a subgroup given by the sorted list of its element ids in the parent
struct Subgroup {
  GroupPtr parent;
  std::vector<std::int32_t> ids;      // sorted ascending
  std::vector<std::int32_t> gens;     // ids generating the subgroup
  Int index_exp = 0;                  // log_p |parent : this|

  Int order() const { return static_cast<Int>(ids.size()); }
  Int order_exp() const;
  bool contains(std::int32_t id) const;
};

Subgroup whole_group(const GroupPtr& g);
Subgroup subgroup_closure(const GroupPtr& g, const std::vector<std::int32_t>& gens);

// Frattini subgroup: normal closure of p-th powers and commutators of generators
Subgroup frattini(const Subgroup& s);

// minimal number of generators: log_p |S : Phi(S)|
Int dmin(const Subgroup& s, const Subgroup* phi_hint = nullptr);

// all maximal (index-p) subgroups
std::vector<Subgroup> maximal_subgroups(const Subgroup& s,
                                        const Subgroup* phi_hint = nullptr);

struct SubgroupRecord {
  Subgroup sub;
  Int index_exp = 0;   // log_p |G : H|
  Int d = 0;           // dmin(H)
  Subgroup phi;        // Phi(H), cached for reuse
};

// every open subgroup of index <= p^max_exp, ordered by (index, element ids)
std::vector<SubgroupRecord> all_subgroups_up_to_index(const GroupPtr& g, Int max_exp);

// G = Phi^0 > Phi^1 > ... computed inside the finite quotient
std::vector<Subgroup> frattini_series(const GroupPtr& g, Int length);

// minimal generating set of s, as parent ids (a Burnside basis lift)
std::vector<std::int32_t> witness_generators(const Subgroup& s, const Subgroup& phi);

}  // namespace gennum::pgroup
