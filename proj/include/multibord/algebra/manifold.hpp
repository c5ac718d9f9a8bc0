#ifndef MULTIBORD_ALGEBRA_MANIFOLD_HPP
#define MULTIBORD_ALGEBRA_MANIFOLD_HPP

#include <optional>

#include "multibord/algebra/graded_ring.hpp"

namespace multibord {

// Closed-manifold wrapper: orientation, fundamental class and per-degree
// duality matrices on top of a GradedRing.
//
// Homology coordinates are the Kronecker pairings against the cohomology
// basis, so the duality matrix in degree d is the inverse of the cup-pairing
// matrix B_d(i,j) = <b_i^d cup b_j^{n-d}, [V]>. Euclidean targets carry the
// compactly-supported ring (non-unital, no fundamental class); their only
// nonzero homology sits in degree 0.
class ManifoldModel {
  public:
    ManifoldModel(std::string name, unsigned dim, bool oriented, RingPtr ring,
                  std::optional<RatVec> fundamental, bool compact = true);

    const std::string& name() const { return name_; }
    unsigned dim() const { return dim_; }
    bool oriented() const { return oriented_; }
    bool compact() const { return compact_; }
    const RingPtr& ring() const { return ring_; }
    const CoeffSystem& coeffs() const { return ring_->coeffs(); }

    std::size_t homology_rank(unsigned d) const;  // rank of H_d = ring rank at n-d
    bool has_fundamental() const { return fundamental_.has_value(); }
    const RatVec& fundamental_coords() const;

    // pd matrix for degree d maps H_d coordinates to H^{n-d} coordinates.
    const ExactMatrix& pd_matrix(unsigned d) const;
    void set_pd_matrix(unsigned d, ExactMatrix m);

    // Derives every pd matrix from the cup tables and the fundamental class.
    void derive_pd_matrices();

    // Cup-pairing matrix B_d: rank(d) x rank(n-d).
    ExactMatrix pairing_matrix(unsigned d) const;

    bool same_as(const ManifoldModel& o) const;

  private:
    std::string name_;
    unsigned dim_;
    bool oriented_;
    bool compact_;
    RingPtr ring_;
    std::optional<RatVec> fundamental_;
    std::vector<std::optional<ExactMatrix>> pd_;
};

using ManifoldPtr = std::shared_ptr<const ManifoldModel>;

struct HomologyElement {
    ManifoldPtr manifold;
    unsigned degree = 0;
    RatVec coords;

    bool is_zero() const { return vec_is_zero(coords); }
    bool operator==(const HomologyElement& o) const;
};

HomologyElement zero_homology(const ManifoldPtr& m, unsigned degree);
HomologyElement basis_homology(const ManifoldPtr& m, unsigned degree, std::size_t index);
HomologyElement fundamental_class(const ManifoldPtr& m);
HomologyElement point_class(const ManifoldPtr& m);

// Poincare duality gamma^{-1}: H_d -> H^{n-d} and its inverse.
Element pd(const ManifoldPtr& m, const HomologyElement& x);
HomologyElement pd_inverse(const ManifoldPtr& m, const Element& a);

// Cap product H^p x H_d -> H_{d-p}, defined through duality so that
// cap(a, cap(b, x)) = cap(cup(a, b), x) holds identically.
HomologyElement cap(const ManifoldPtr& m, const Element& a, const HomologyElement& x);

// <a, [V]> for top-degree a. Kronecker pairing against the fundamental class.
Rat evaluate_top(const ManifoldPtr& m, const Element& a);

// Kronecker pairing <a, x> for deg a = deg x.
Rat kronecker(const Element& a, const HomologyElement& x);

struct ManifoldViolation {
    std::string kind;
    unsigned degree = 0;
    std::string detail;
};

std::vector<ManifoldViolation> validate_manifold(const ManifoldPtr& m);

// Built-in library. Accepted names: sphere(n), torus(n), surface(g),
// projective_plane, complex_projective(n), euclidean(m), product(A,B).
ManifoldPtr builtin_manifold(const std::string& spec, const CoeffSystem& sys);

std::string homology_to_string(const HomologyElement& x);

}  // namespace multibord

#endif
