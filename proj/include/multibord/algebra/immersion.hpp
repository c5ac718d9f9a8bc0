#ifndef MULTIBORD_ALGEBRA_IMMERSION_HPP
#define MULTIBORD_ALGEBRA_IMMERSION_HPP

#include "multibord/algebra/manifold.hpp"

namespace multibord {

// Algebraic model of an immersion f: V^n -> M^m. Carries the pullback and
// pushforward matrices, the normal Euler class, and derives the Gysin map
// from duality. An explicit Gysin override, when supplied, is cross-checked
// against the derived one at validation time.
struct ImmersionAlgebraic {
    std::string name;
    ManifoldPtr source;  // V^n
    ManifoldPtr target;  // M^m
    std::vector<ExactMatrix> pullback;     // degree d: rank_V(d) x rank_M(d)
    std::vector<ExactMatrix> pushforward;  // homology degree d: rank_{H_d(M)} x rank_{H_d(V)}
    Element euler;                         // degree m-n class on V
    bool unoriented_extension = false;     // permits odd codimension in F2 mode
    std::vector<std::optional<ExactMatrix>> gysin_override;  // per source degree, optional

    unsigned codim() const { return target->dim() - source->dim(); }
    bool codim_even() const { return codim() % 2 == 0; }
    const CoeffSystem& coeffs() const { return source->coeffs(); }
};

using ImmersionPtr = std::shared_ptr<const ImmersionAlgebraic>;

struct ImmersionViolation {
    std::string kind;
    unsigned degree = 0;
    std::string detail;
};

// Structural invariants: positive codimension, parity rule per mode, ring-map
// property of the pullback, f^*(1_M) = 1_V, shape checks, Gysin override
// agreement. Report-valued.
std::vector<ImmersionViolation> validate_immersion(const ImmersionPtr& F);

// Gysin map f_! = pd_M o f_* o pd_V^{-1}; raises degree by m-n.
Element gysin_shriek(const ImmersionPtr& F, const Element& a);

// f^*: classes on M pulled back to V (degree must not exceed dim V).
Element pullback_apply(const ImmersionPtr& F, const Element& b);

// phi_k(a) = f^* f_!(a) - k * (e cup a).
Element phi(const ImmersionPtr& F, const Element& a, unsigned k);

// (k-1)! v_k as the composition phi_{k-1} o ... o phi_1 (1_V); k = 1 gives 1_V.
// Degrees past the top of V are zero by dimension, reported as such.
struct ScaledClass {
    Element value;
    bool zero_by_dimension = false;
};
ScaledClass vk_scaled(const ImmersionPtr& F, unsigned k);
ScaledClass mk_scaled(const ImmersionPtr& F, unsigned k);

// One step of the Herbert recursion: v_k = f^*(m_{k-1}) - e cup v_{k-1}.
Element herbert_step(const ImmersionPtr& F, const Element& v_prev, const Element& m_prev);

// Herbert chain v_1..v_kmax with m_k recovered from f_!(v_k)/k where the
// division is meaningful. Over F2 an even k leaves m_k undetermined; the
// chain continues only when f^* annihilates that degree for shape reasons.
struct HerbertChainEntry {
    unsigned k = 0;
    Element v;                    // the class v_k
    std::optional<Element> m;     // m_k when determined
    bool v_zero_by_dimension = false;
    bool m_undetermined = false;  // F2, even k, value not forced
};
struct HerbertChain {
    std::vector<HerbertChainEntry> entries;
    bool ambiguous = false;       // chain stopped early (F2 division obstruction)
    std::string note;
};
HerbertChain herbert_chain(const ImmersionPtr& F, unsigned k_max);

// Corollary-style scaled classes against the recursion, over Q. Lists every
// k and degree where the two derivations differ (expected: none).
struct ConsistencyReport {
    bool passed = true;
    std::vector<std::string> mismatches;
};
ConsistencyReport rational_consistency(const ImmersionPtr& F, unsigned k_max);

// e = f^* f_!(1_V) + (-1)^m pd(D) for a supplied double-point class D.
Element euler_from_double_class(const ImmersionPtr& F, const HomologyElement& D);

// f_!(f^*(b) cup a) = b cup f_!(a) on all basis pairs.
ConsistencyReport projection_formula_check(const ImmersionPtr& F);

// Mode change: Z -> Q or Z -> F_p reduction of every matrix and class.
ImmersionPtr convert_mode(const ImmersionPtr& F, const CoeffSystem& sys);
ManifoldPtr convert_manifold_mode(const ManifoldPtr& m, const CoeffSystem& sys);

// Built-in immersion fixtures:
//   cp1-in-cp2     embedding CP^1 in CP^2 over Z (normal bundle O(1))
//   whitney-s2-r4  the Whitney sphere S^2 in R^4 over Z (normal Euler +-2)
//   s2-unknot-r4   unknotted embedded S^2 inside a 3-plane of R^4 (e = 0)
//   rp2-in-r3      Boy-type immersion RP^2 in R^3 over F2 (e = w_1)
ImmersionPtr builtin_immersion(const std::string& name);
std::vector<std::string> builtin_immersion_names();

}  // namespace multibord

#endif
