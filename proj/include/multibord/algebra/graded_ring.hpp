#ifndef MULTIBORD_ALGEBRA_GRADED_RING_HPP
#define MULTIBORD_ALGEBRA_GRADED_RING_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "multibord/exact/matrix.hpp"

namespace multibord {

// Graded ring given by dense cup structure-constant tables per degree pair.
// Ranks are tiny (desk scale), so no generators/relations machinery.
//
// The compactly-supported model of a euclidean target is the one non-unital
// ring in the library: rank(0) = 0 there and the unit law is vacuous.
class GradedRing {
  public:
    GradedRing(std::string name, CoeffSystem coeffs, unsigned top_degree,
               std::vector<std::size_t> ranks, bool unital = true);

    const std::string& name() const { return name_; }
    const CoeffSystem& coeffs() const { return coeffs_; }
    unsigned top_degree() const { return top_; }
    std::size_t rank(unsigned d) const { return d <= top_ ? ranks_[d] : 0; }
    bool unital() const { return unital_; }

    // Structure constants: cup(b_i^p, b_j^q) = sum_k table[(p,q)][i][j][k] b_k^{p+q}.
    void set_cup(unsigned p, unsigned q, std::size_t i, std::size_t j, const RatVec& coords);
    RatVec cup_basis(unsigned p, unsigned q, std::size_t i, std::size_t j) const;
    bool has_table(unsigned p, unsigned q) const;

    void set_basis_label(unsigned d, std::size_t i, const std::string& label);
    std::string basis_label(unsigned d, std::size_t i) const;

    bool same_as(const GradedRing& o) const;  // structural identity

  private:
    std::string name_;
    CoeffSystem coeffs_;
    unsigned top_;
    std::vector<std::size_t> ranks_;
    bool unital_;
    std::map<std::pair<unsigned, unsigned>, std::vector<Rat>> tables_;
    std::map<std::pair<unsigned, std::size_t>, std::string> labels_;

    std::size_t tensor_index(unsigned p, unsigned q, std::size_t i, std::size_t j, std::size_t k) const;
};

using RingPtr = std::shared_ptr<const GradedRing>;

// Homogeneous ring element: degree plus exact coordinate vector.
struct Element {
    RingPtr ring;
    unsigned degree = 0;
    RatVec coords;

    bool is_zero() const { return vec_is_zero(coords); }
    bool operator==(const Element& o) const;
};

Element zero_element(const RingPtr& ring, unsigned degree);
Element basis_element(const RingPtr& ring, unsigned degree, std::size_t index);
Element unit_element(const RingPtr& ring);

Element cup(const Element& a, const Element& b);
Element scale_add(const Rat& c1, const Element& a, const Rat& c2, const Element& b);
Element scale(const Rat& c, const Element& a);

std::string element_to_string(const Element& a);

// One violated ring axiom, with enough indices to locate it.
struct RingViolation {
    std::string kind;  // "unit", "commutativity", "associativity", "shape"
    unsigned p = 0, q = 0, r = 0;
    std::size_t i = 0, j = 0, k = 0;
    std::string detail;
};

// Checks unit law, graded commutativity and associativity on all basis
// tuples with total degree within range. Report-valued, never throws.
std::vector<RingViolation> validate_ring(const GradedRing& ring);

}  // namespace multibord

#endif
