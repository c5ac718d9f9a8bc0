#include "multibord/algebra/immersion.hpp"

#include <sstream>

namespace multibord {

namespace {

Int factorial(unsigned k) {
    Int f = 1;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

ExactMatrix derived_gysin_matrix(const ImmersionPtr& F, unsigned d) {
    // Columns are f_!(basis element) in degree d.
    const unsigned n = F->source->dim();
    const std::size_t cols = F->source->ring()->rank(d);
    const std::size_t rows = F->target->ring()->rank(d + F->codim());
    ExactMatrix G(F->coeffs(), rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Element a = basis_element(F->source->ring(), d, j);
        HomologyElement h = pd_inverse(F->source, a);  // degree n-d on V
        if (F->pushforward.size() <= n - d) throw FixtureError("pushforward matrices incomplete");
        RatVec y = F->pushforward[n - d].apply(h.coords);
        HomologyElement hm{F->target, n - d, y};
        Element b = pd(F->target, hm);
        for (std::size_t i = 0; i < rows; ++i) G.set(i, j, b.coords[i]);
    }
    return G;
}

}  // namespace

Element gysin_shriek(const ImmersionPtr& F, const Element& a) {
    const unsigned n = F->source->dim();
    if (a.degree > n) throw DegreeError("gysin_shriek: degree beyond source dimension");
    if (!a.ring->same_as(*F->source->ring())) throw InputError("gysin_shriek: element not on the source");
    HomologyElement h = pd_inverse(F->source, a);
    RatVec y = F->pushforward[n - a.degree].apply(h.coords);
    HomologyElement hm{F->target, n - a.degree, y};
    return pd(F->target, hm);
}

Element pullback_apply(const ImmersionPtr& F, const Element& b) {
    if (!b.ring->same_as(*F->target->ring())) throw InputError("pullback: element not on the target");
    // H^d(V) = 0 beyond the source dimension; the zero there is not
    // representable as an Element, so callers handle that case.
    if (b.degree > F->source->dim()) throw DegreeError("pullback: degree beyond source dimension");
    if (F->pullback.size() <= b.degree) throw FixtureError("pullback matrices incomplete");
    return Element{F->source->ring(), b.degree, F->pullback[b.degree].apply(b.coords)};
}

Element phi(const ImmersionPtr& F, const Element& a, unsigned k) {
    const unsigned n = F->source->dim();
    if (a.degree + F->codim() > n)
        throw DegreeError("phi: degree overflow (deg a + codim > dim V)");
    Element fb = pullback_apply(F, gysin_shriek(F, a));
    Element ea = cup(F->euler, a);
    return scale_add(Rat(1), fb, Rat(-static_cast<long>(k)), ea);
}

ScaledClass vk_scaled(const ImmersionPtr& F, unsigned k) {
    if (k < 1) throw InputError("vk_scaled: k must be positive");
    const unsigned n = F->source->dim();
    const unsigned target_degree = (k - 1) * F->codim();
    if (target_degree > n)
        return {zero_element(F->source->ring(), n), true};
    Element a = unit_element(F->source->ring());
    for (unsigned j = 1; j < k; ++j) a = phi(F, a, j);
    return {a, false};
}

ScaledClass mk_scaled(const ImmersionPtr& F, unsigned k) {
    const unsigned m = F->target->dim();
    ScaledClass v = vk_scaled(F, k);
    if (v.zero_by_dimension || k * F->codim() > m)
        return {zero_element(F->target->ring(), std::min(k * F->codim(), m)), true};
    return {gysin_shriek(F, v.value), false};
}

Element herbert_step(const ImmersionPtr& F, const Element& v_prev, const Element& m_prev) {
    if (m_prev.degree != v_prev.degree + F->codim())
        throw DegreeError("herbert_step: deg m_prev must be deg v_prev + codim");
    Element fm = pullback_apply(F, m_prev);
    Element ev = cup(F->euler, v_prev);
    return scale_add(Rat(1), fm, Rat(-1), ev);
}

namespace {

// m_k := f_!(v_k) / k where the division is forced; see header for the F2 rules.
void recover_mk(const ImmersionPtr& F, HerbertChainEntry& e) {
    const unsigned m = F->target->dim();
    const unsigned deg = e.k * F->codim();
    if (e.v_zero_by_dimension || deg > m) {
        e.m = zero_element(F->target->ring(), std::min(deg, m));
        return;
    }
    Element t = gysin_shriek(F, e.v);
    const CoeffSystem& sys = F->coeffs();
    if (sys.kind == CoeffKind::Rationals) {
        e.m = scale(Rat(1, static_cast<long>(e.k)), t);
        return;
    }
    if (sys.kind == CoeffKind::Integers) {
        Element out = zero_element(F->target->ring(), t.degree);
        for (std::size_t i = 0; i < t.coords.size(); ++i) {
            Rat q = t.coords[i] / Rat(static_cast<long>(e.k));
            if (!is_integer(q)) {
                e.m_undetermined = true;
                return;
            }
            out.coords[i] = q;
        }
        e.m = out;
        return;
    }
    // Prime field: k invertible mod p determines m_k; otherwise only a
    // rank-zero target forces it.
    Rat kk = sys.reduce(Rat(static_cast<long>(e.k)));
    if (kk != 0) {
        e.m = scale(sys.inverse(kk), t);
    } else if (F->target->ring()->rank(t.degree) == 0) {
        e.m = t;  // zero group
    } else {
        e.m_undetermined = true;
    }
}

bool pullback_is_zero_map(const ImmersionPtr& F, unsigned degree) {
    if (degree > F->source->dim()) return true;
    if (F->pullback.size() <= degree) return true;
    return F->pullback[degree].is_zero();
}

}  // namespace

HerbertChain herbert_chain(const ImmersionPtr& F, unsigned k_max) {
    HerbertChain chain;
    const unsigned n = F->source->dim();

    HerbertChainEntry first;
    first.k = 1;
    first.v = unit_element(F->source->ring());
    recover_mk(F, first);
    chain.entries.push_back(first);

    for (unsigned k = 2; k <= k_max; ++k) {
        const HerbertChainEntry& prev = chain.entries.back();
        HerbertChainEntry e;
        e.k = k;
        const unsigned deg = (k - 1) * F->codim();
        if (prev.v_zero_by_dimension || deg > n) {
            e.v = zero_element(F->source->ring(), std::min(deg, n));
            e.v_zero_by_dimension = true;
        } else if (prev.m.has_value() && !prev.m_undetermined) {
            e.v = herbert_step(F, prev.v, *prev.m);
        } else if (pullback_is_zero_map(F, deg)) {
            // f^* kills the undetermined term for shape reasons.
            e.v = scale(Rat(-1), cup(F->euler, prev.v));
        } else {
            chain.ambiguous = true;
            chain.note = "m_" + std::to_string(k - 1) +
                         " undetermined in this mode and f^* does not vanish in degree " +
                         std::to_string(deg);
            break;
        }
        recover_mk(F, e);
        chain.entries.push_back(e);
    }
    return chain;
}

ConsistencyReport rational_consistency(const ImmersionPtr& F, unsigned k_max) {
    ImmersionPtr Fq = F;
    if (F->coeffs().kind == CoeffKind::Integers)
        Fq = convert_mode(F, CoeffSystem::rationals());
    else if (F->coeffs().kind != CoeffKind::Rationals)
        throw ModeError("rational_consistency requires Z or Q coefficients");

    ConsistencyReport report;
    HerbertChain chain = herbert_chain(Fq, k_max);
    for (const auto& e : chain.entries) {
        ScaledClass sv = vk_scaled(Fq, e.k);
        Element lhs = e.v_zero_by_dimension ? zero_element(Fq->source->ring(), sv.value.degree)
                                            : e.v;
        Element rhs = scale(Rat(1) / Rat(factorial(e.k - 1)), sv.value);
        if (!(lhs == rhs)) {
            report.passed = false;
            report.mismatches.push_back("v_" + std::to_string(e.k) + ": recursion " +
                                        element_to_string(lhs) + " vs scaled " + element_to_string(rhs));
        }
        if (e.m.has_value() && !e.m_undetermined) {
            ScaledClass sm = mk_scaled(Fq, e.k);
            Element mr = scale(Rat(1) / Rat(factorial(e.k)), sm.value);
            if (!(*e.m == mr)) {
                report.passed = false;
                report.mismatches.push_back("m_" + std::to_string(e.k) + ": recursion " +
                                            element_to_string(*e.m) + " vs scaled " +
                                            element_to_string(mr));
            }
        }
    }
    if (chain.ambiguous) {
        report.passed = false;
        report.mismatches.push_back("chain ambiguous: " + chain.note);
    }
    return report;
}

Element euler_from_double_class(const ImmersionPtr& F, const HomologyElement& D) {
    const unsigned n = F->source->dim();
    const unsigned m = F->target->dim();
    if (2 * n < m) throw DegreeError("euler_from_double_class: 2n-m negative");
    if (D.degree != 2 * n - m)
        throw DegreeError("euler_from_double_class: D must have degree 2n-m");
    Element term = pullback_apply(F, gysin_shriek(F, unit_element(F->source->ring())));
    Rat sign = (m % 2 == 0 || F->coeffs().is_f2()) ? Rat(1) : Rat(-1);
    return scale_add(Rat(1), term, sign, pd(F->source, D));
}

ConsistencyReport projection_formula_check(const ImmersionPtr& F) {
    ConsistencyReport report;
    const unsigned n = F->source->dim();
    const unsigned m = F->target->dim();
    const unsigned c = F->codim();
    for (unsigned p = 0; p <= m; ++p)
        for (std::size_t i = 0; i < F->target->ring()->rank(p); ++i)
            for (unsigned q = 0; q <= n; ++q)
                for (std::size_t j = 0; j < F->source->ring()->rank(q); ++j) {
                    if (p + q + c > m) continue;
                    Element b = basis_element(F->target->ring(), p, i);
                    Element a = basis_element(F->source->ring(), q, j);
                    Element rhs = cup(b, gysin_shriek(F, a));
                    Element lhs;
                    if (p <= n && p + q <= n) {
                        lhs = gysin_shriek(F, cup(pullback_apply(F, b), a));
                    } else {
                        // f^*(b) lives in a zero group; the formula forces rhs = 0.
                        lhs = zero_element(F->target->ring(), rhs.degree);
                    }
                    if (!(lhs == rhs)) {
                        report.passed = false;
                        std::ostringstream os;
                        os << "projection formula fails at b=" << F->target->ring()->basis_label(p, i)
                           << ", a=" << F->source->ring()->basis_label(q, j);
                        report.mismatches.push_back(os.str());
                    }
                }
    return report;
}

std::vector<ImmersionViolation> validate_immersion(const ImmersionPtr& F) {
    std::vector<ImmersionViolation> out;
    const unsigned n = F->source->dim();
    const unsigned m = F->target->dim();

    if (m <= n) {
        out.push_back({"codim", 0, "target dimension must exceed source dimension"});
        return out;
    }
    if (F->source->coeffs() != F->target->coeffs())
        out.push_back({"mode", 0, "source and target coefficient systems differ"});
    if (!F->codim_even()) {
        if (!(F->coeffs().is_f2() && F->unoriented_extension))
            out.push_back({"mode", 0,
                           "odd codimension requires F2 coefficients and the unoriented-extension flag"});
    }
    if (!F->source->oriented() && !F->coeffs().is_f2())
        out.push_back({"mode", 0, "unoriented source outside F2 mode"});

    if (F->pullback.size() != m + 1)
        out.push_back({"shape", 0, "pullback must carry degrees 0..m"});
    if (F->pushforward.size() != n + 1)
        out.push_back({"shape", 0, "pushforward must carry degrees 0..n"});
    for (unsigned d = 0; d < F->pullback.size(); ++d) {
        std::size_t want_rows = d <= n ? F->source->ring()->rank(d) : 0;
        if (F->pullback[d].rows() != want_rows || F->pullback[d].cols() != F->target->ring()->rank(d))
            out.push_back({"shape", d, "pullback matrix shape mismatch"});
    }
    for (unsigned d = 0; d < F->pushforward.size(); ++d) {
        if (F->pushforward[d].rows() != F->target->homology_rank(d) ||
            F->pushforward[d].cols() != F->source->homology_rank(d))
            out.push_back({"shape", d, "pushforward matrix shape mismatch"});
    }
    if (!out.empty()) return out;  // shape errors make the rest meaningless

    if (F->euler.degree != m - n || !F->euler.ring->same_as(*F->source->ring()))
        out.push_back({"euler", m - n, "euler class must live on V in degree m-n"});

    if (F->target->ring()->unital()) {
        Element one_m = unit_element(F->target->ring());
        if (!(pullback_apply(F, one_m) == unit_element(F->source->ring())))
            out.push_back({"ring-map", 0, "f^*(1_M) != 1_V"});
    }

    for (unsigned p = 0; p <= m; ++p)
        for (unsigned q = 0; p + q <= m; ++q)
            for (std::size_t i = 0; i < F->target->ring()->rank(p); ++i)
                for (std::size_t j = 0; j < F->target->ring()->rank(q); ++j) {
                    Element bi = basis_element(F->target->ring(), p, i);
                    Element bj = basis_element(F->target->ring(), q, j);
                    Element prod = cup(bi, bj);
                    if (p + q <= n) {
                        Element lhs = pullback_apply(F, prod);
                        if (p > n || q > n) {
                            if (!lhs.is_zero())
                                out.push_back({"ring-map", p + q, "f^* of product of high-degree classes"});
                            continue;
                        }
                        Element rhs = cup(pullback_apply(F, bi), pullback_apply(F, bj));
                        if (!(lhs == rhs))
                            out.push_back({"ring-map", p + q,
                                           "f^*(a cup b) != f^*a cup f^*b at " +
                                               F->target->ring()->basis_label(p, i) + ", " +
                                               F->target->ring()->basis_label(q, j)});
                    }
                }

    for (unsigned d = 0; d < F->gysin_override.size() && d <= n; ++d) {
        if (!F->gysin_override[d]) continue;
        ExactMatrix derived = derived_gysin_matrix(F, d);
        if (!(*F->gysin_override[d] == derived))
            out.push_back({"gysin-override", d, "explicit Gysin matrix disagrees with the derived one"});
    }
    return out;
}

ManifoldPtr convert_manifold_mode(const ManifoldPtr& src, const CoeffSystem& sys) {
    if (src->coeffs() == sys) return src;
    if (src->coeffs().kind != CoeffKind::Integers)
        throw ModeError("mode conversion is defined from Z coefficients");
    const GradedRing& r0 = *src->ring();
    std::vector<std::size_t> ranks(r0.top_degree() + 1);
    for (unsigned d = 0; d <= r0.top_degree(); ++d) ranks[d] = r0.rank(d);
    auto ring = std::make_shared<GradedRing>(r0.name(), sys, r0.top_degree(), ranks, r0.unital());
    for (unsigned p = 0; p <= r0.top_degree(); ++p)
        for (unsigned q = 0; p + q <= r0.top_degree(); ++q)
            for (std::size_t i = 0; i < r0.rank(p); ++i)
                for (std::size_t j = 0; j < r0.rank(q); ++j) ring->set_cup(p, q, i, j, r0.cup_basis(p, q, i, j));
    for (unsigned d = 0; d <= r0.top_degree(); ++d)
        for (std::size_t i = 0; i < r0.rank(d); ++i) ring->set_basis_label(d, i, r0.basis_label(d, i));

    std::optional<RatVec> fc;
    if (src->has_fundamental()) {
        fc = src->fundamental_coords();
        for (auto& v : *fc) v = sys.reduce(v);
    }
    auto man = std::make_shared<ManifoldModel>(src->name(), src->dim(), src->oriented(), ring, fc,
                                               src->compact());
    for (unsigned d = 0; d <= src->dim(); ++d) {
        const ExactMatrix& P = src->pd_matrix(d);
        ExactMatrix Q(sys, P.rows(), P.cols());
        for (std::size_t i = 0; i < P.rows(); ++i)
            for (std::size_t j = 0; j < P.cols(); ++j) Q.set(i, j, P.at(i, j));
        man->set_pd_matrix(d, std::move(Q));
    }
    return man;
}

namespace {

// Zero matrices with the shapes validate_immersion expects.
void fill_default_maps(ImmersionAlgebraic& F) {
    const unsigned n = F.source->dim();
    const unsigned m = F.target->dim();
    const CoeffSystem& sys = F.source->coeffs();
    F.pullback.clear();
    F.pushforward.clear();
    for (unsigned d = 0; d <= m; ++d)
        F.pullback.emplace_back(sys, d <= n ? F.source->ring()->rank(d) : 0, F.target->ring()->rank(d));
    for (unsigned d = 0; d <= n; ++d)
        F.pushforward.emplace_back(sys, F.target->homology_rank(d), F.source->homology_rank(d));
}

}  // namespace

ImmersionPtr builtin_immersion(const std::string& name) {
    auto F = std::make_shared<ImmersionAlgebraic>();
    F->name = name;
    if (name == "cp1-in-cp2") {
        auto sys = CoeffSystem::integers();
        F->source = builtin_manifold("complex_projective(1)", sys);
        F->target = builtin_manifold("complex_projective(2)", sys);
        fill_default_maps(*F);
        F->pullback[0].set(0, 0, Rat(1));   // 1 -> 1
        F->pullback[2].set(0, 0, Rat(1));   // h -> g
        F->pushforward[0].set(0, 0, Rat(1));  // point to point
        F->pushforward[2].set(0, 0, Rat(1));  // [CP^1] to the line class
        F->euler = basis_element(F->source->ring(), 2, 0);  // e(O(1)) = g
        return F;
    }
    if (name == "whitney-s2-r4" || name == "s2-unknot-r4") {
        auto sys = CoeffSystem::integers();
        F->source = builtin_manifold("sphere(2)", sys);
        F->target = builtin_manifold("euclidean(4)", sys);
        fill_default_maps(*F);
        F->pushforward[0].set(0, 0, Rat(1));
        // Normal Euler class in the double-count sign convention of the
        // geometry engine: the shipped Whitney sphere pairs to -2, the
        // unknotted embedded sphere to 0.
        F->euler = name == "whitney-s2-r4" ? scale(Rat(-2), basis_element(F->source->ring(), 2, 0))
                                           : zero_element(F->source->ring(), 2);
        return F;
    }
    if (name == "rp2-in-r3") {
        auto sys = CoeffSystem::prime_field(2);
        F->source = builtin_manifold("projective_plane", sys);
        F->target = builtin_manifold("euclidean(3)", sys);
        fill_default_maps(*F);
        F->pushforward[0].set(0, 0, Rat(1));
        F->euler = basis_element(F->source->ring(), 1, 0);  // w_1 of the normal line bundle
        F->unoriented_extension = true;
        return F;
    }
    throw InputError("unknown builtin immersion: " + name);
}

std::vector<std::string> builtin_immersion_names() {
    return {"cp1-in-cp2", "whitney-s2-r4", "s2-unknot-r4", "rp2-in-r3"};
}

ImmersionPtr convert_mode(const ImmersionPtr& F, const CoeffSystem& sys) {
    if (F->coeffs() == sys) return F;
    auto out = std::make_shared<ImmersionAlgebraic>();
    out->name = F->name;
    out->source = convert_manifold_mode(F->source, sys);
    out->target = convert_manifold_mode(F->target, sys);
    out->unoriented_extension = F->unoriented_extension;
    auto conv = [&](const ExactMatrix& A) {
        ExactMatrix B(sys, A.rows(), A.cols());
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j) B.set(i, j, A.at(i, j));
        return B;
    };
    for (const auto& A : F->pullback) out->pullback.push_back(conv(A));
    for (const auto& A : F->pushforward) out->pushforward.push_back(conv(A));
    RatVec e = F->euler.coords;
    for (auto& v : e) v = sys.reduce(v);
    out->euler = Element{out->source->ring(), F->euler.degree, e};
    for (const auto& g : F->gysin_override)
        out->gysin_override.push_back(g ? std::optional<ExactMatrix>(conv(*g)) : std::nullopt);
    return out;
}

}  // namespace multibord
