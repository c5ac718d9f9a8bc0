#include "multibord/algebra/manifold.hpp"

#include <algorithm>
#include <sstream>

namespace multibord {

ManifoldModel::ManifoldModel(std::string name, unsigned dim, bool oriented, RingPtr ring,
                             std::optional<RatVec> fundamental, bool compact)
    : name_(std::move(name)),
      dim_(dim),
      oriented_(oriented),
      compact_(compact),
      ring_(std::move(ring)),
      fundamental_(std::move(fundamental)),
      pd_(dim + 1) {
    if (!ring_) throw FixtureError("manifold " + name_ + ": missing ring");
    if (ring_->top_degree() != dim_) throw FixtureError("manifold " + name_ + ": ring top degree != dim");
    if (fundamental_ && fundamental_->size() != ring_->rank(dim_))
        throw FixtureError("manifold " + name_ + ": fundamental class length mismatch");
}

std::size_t ManifoldModel::homology_rank(unsigned d) const {
    return d <= dim_ ? ring_->rank(dim_ - d) : 0;
}

const RatVec& ManifoldModel::fundamental_coords() const {
    if (!fundamental_) throw ModeError("manifold " + name_ + " has no fundamental class");
    return *fundamental_;
}

const ExactMatrix& ManifoldModel::pd_matrix(unsigned d) const {
    if (d > dim_) throw DegreeError("pd degree out of range");
    if (!pd_[d]) throw FixtureError("manifold " + name_ + ": pd matrix missing in degree " + std::to_string(d));
    return *pd_[d];
}

void ManifoldModel::set_pd_matrix(unsigned d, ExactMatrix m) {
    if (d > dim_) throw DegreeError("pd degree out of range");
    if (m.rows() != ring_->rank(dim_ - d) || m.cols() != homology_rank(d))
        throw DimensionError("pd matrix shape mismatch in degree " + std::to_string(d));
    pd_[d] = std::move(m);
}

ExactMatrix ManifoldModel::pairing_matrix(unsigned d) const {
    const unsigned n = dim_;
    RingPtr R = ring_;
    ExactMatrix B(coeffs(), R->rank(d), R->rank(n - d));
    if (!fundamental_) return B;
    for (std::size_t i = 0; i < R->rank(d); ++i)
        for (std::size_t j = 0; j < R->rank(n - d); ++j) {
            RatVec prod = R->cup_basis(d, n - d, i, j);
            Rat v = 0;
            for (std::size_t k = 0; k < prod.size(); ++k) v += prod[k] * (*fundamental_)[k];
            B.set(i, j, v);
        }
    return B;
}

void ManifoldModel::derive_pd_matrices() {
    const unsigned n = dim_;
    if (!fundamental_) {
        // Euclidean compact-support model: homology only in degree 0.
        for (unsigned d = 0; d <= n; ++d)
            pd_[d] = ExactMatrix::identity(coeffs(), ring_->rank(n - d));
        return;
    }
    for (unsigned d = 0; d <= n; ++d) {
        if (ring_->rank(d) != ring_->rank(n - d))
            throw FixtureError("manifold " + name_ + ": duality rank mismatch in degree " + std::to_string(d));
        ExactMatrix B = pairing_matrix(d);
        auto inv = inverse(B);
        if (!inv)
            throw FixtureError("manifold " + name_ + ": cup pairing not invertible in degree " +
                               std::to_string(d));
        pd_[d] = std::move(*inv);
    }
}

bool ManifoldModel::same_as(const ManifoldModel& o) const {
    return name_ == o.name_ && dim_ == o.dim_ && oriented_ == o.oriented_ && compact_ == o.compact_ &&
           ring_->same_as(*o.ring_);
}

bool HomologyElement::operator==(const HomologyElement& o) const {
    return degree == o.degree && coords == o.coords && manifold && o.manifold &&
           manifold->same_as(*o.manifold);
}

HomologyElement zero_homology(const ManifoldPtr& m, unsigned degree) {
    if (degree > m->dim()) throw DegreeError("homology degree out of range");
    return HomologyElement{m, degree, RatVec(m->homology_rank(degree), Rat(0))};
}

HomologyElement basis_homology(const ManifoldPtr& m, unsigned degree, std::size_t index) {
    HomologyElement x = zero_homology(m, degree);
    if (index >= x.coords.size()) throw DimensionError("homology basis index out of range");
    x.coords[index] = 1;
    return x;
}

HomologyElement fundamental_class(const ManifoldPtr& m) {
    HomologyElement x = zero_homology(m, m->dim());
    x.coords = m->fundamental_coords();
    return x;
}

HomologyElement point_class(const ManifoldPtr& m) {
    if (m->homology_rank(0) != 1)
        throw ModeError("point class needs rank-1 H_0 (connected manifold)");
    return basis_homology(m, 0, 0);
}

namespace {
void require_duality_mode(const ManifoldPtr& m) {
    if (!m->oriented() && !m->coeffs().is_f2())
        throw ModeError("manifold " + m->name() + " is unoriented: duality needs F2 coefficients");
}
}  // namespace

Element pd(const ManifoldPtr& m, const HomologyElement& x) {
    if (!x.manifold->same_as(*m)) throw InputError("homology element from different manifold");
    require_duality_mode(m);
    const ExactMatrix& P = m->pd_matrix(x.degree);
    return Element{m->ring(), m->dim() - x.degree, P.apply(x.coords)};
}

HomologyElement pd_inverse(const ManifoldPtr& m, const Element& a) {
    require_duality_mode(m);
    if (a.degree > m->dim()) throw DegreeError("pd_inverse degree out of range");
    const unsigned d = m->dim() - a.degree;
    const ExactMatrix& P = m->pd_matrix(d);
    auto Pinv = inverse(P);
    if (!Pinv) throw FixtureError("pd matrix not invertible in degree " + std::to_string(d));
    return HomologyElement{m, d, Pinv->apply(a.coords)};
}

HomologyElement cap(const ManifoldPtr& m, const Element& a, const HomologyElement& x) {
    if (a.degree > x.degree) throw DegreeError("cap degree underflow");
    Element dual = pd(m, x);
    return pd_inverse(m, cup(a, dual));
}

Rat evaluate_top(const ManifoldPtr& m, const Element& a) {
    if (a.degree != m->dim()) throw DegreeError("evaluate_top needs a top-degree class");
    const RatVec& fc = m->fundamental_coords();
    Rat v = 0;
    for (std::size_t i = 0; i < fc.size(); ++i) v += a.coords[i] * fc[i];
    return m->coeffs().reduce(v);
}

Rat kronecker(const Element& a, const HomologyElement& x) {
    if (a.degree != x.degree) throw DegreeError("kronecker pairing degree mismatch");
    if (a.coords.size() != x.coords.size()) throw DimensionError("kronecker pairing rank mismatch");
    Rat v = 0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) v += a.coords[i] * x.coords[i];
    return x.manifold->coeffs().reduce(v);
}

std::vector<ManifoldViolation> validate_manifold(const ManifoldPtr& m) {
    std::vector<ManifoldViolation> out;
    const unsigned n = m->dim();
    const CoeffSystem& sys = m->coeffs();

    for (auto& rv : validate_ring(*m->ring()))
        out.push_back({"ring:" + rv.kind, rv.p, rv.detail});

    if (!m->oriented() && !sys.is_f2())
        out.push_back({"mode", 0, "unoriented manifold outside F2 mode"});

    for (unsigned d = 0; d <= n; ++d) {
        const ExactMatrix* P = nullptr;
        try {
            P = &m->pd_matrix(d);
        } catch (const Error& e) {
            out.push_back({"pd-missing", d, e.what()});
            continue;
        }
        auto Pinv = inverse(*P);
        if (!Pinv) {
            out.push_back({"pd-singular", d, "pd matrix not invertible within " + sys.name()});
            continue;
        }
        if (!(*Pinv * *P).is_identity())
            out.push_back({"pd-inverse", d, "pd composed with inverse is not the identity"});
        if (m->has_fundamental()) {
            ExactMatrix B = m->pairing_matrix(d);
            if (!(B * *P).is_identity())
                out.push_back({"pd-adjunction", d, "pairing times pd is not the identity"});
            // Graded symmetry of the cup pairing.
            ExactMatrix Bt = m->pairing_matrix(n - d).transposed();
            Rat sign = (!sys.is_f2() && (d * (n - d)) % 2 == 1) ? Rat(-1) : Rat(1);
            if (!(B == Bt.scaled(sign)))
                out.push_back({"pairing-symmetry", d, "cup pairing lacks graded symmetry"});
            if (sys.kind == CoeffKind::Integers && B.rows() > 0) {
                Rat dB = det(B);
                if (dB != 1 && dB != -1)
                    out.push_back({"pairing-unimodular", d, "cup pairing determinant " + rat_to_string(dB)});
            }
        }
    }

    if (m->has_fundamental() && m->ring()->unital()) {
        Element pdfc = pd(m, fundamental_class(m));
        if (!(pdfc == unit_element(m->ring())))
            out.push_back({"pd-fundamental", n, "pd(fundamental class) != 1"});
    }

    // Cap-cup compatibility on basis triples.
    if (m->has_fundamental()) {
        for (unsigned p = 0; p <= n; ++p)
            for (unsigned q = 0; p + q <= n; ++q)
                for (unsigned dd = p + q; dd <= n; ++dd)
                    for (std::size_t i = 0; i < m->ring()->rank(p); ++i)
                        for (std::size_t j = 0; j < m->ring()->rank(q); ++j)
                            for (std::size_t x = 0; x < m->homology_rank(dd); ++x) {
                                Element a = basis_element(m->ring(), p, i);
                                Element b = basis_element(m->ring(), q, j);
                                HomologyElement h = basis_homology(m, dd, x);
                                if (!(cap(m, a, cap(m, b, h)) == cap(m, cup(a, b), h)))
                                    out.push_back({"cap-cup", dd, "cap(a,cap(b,x)) != cap(a cup b, x)"});
                            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Built-in manifolds
// ---------------------------------------------------------------------------

namespace {

struct SpecCall {
    std::string head;
    std::vector<std::string> args;
};

SpecCall parse_spec(const std::string& s) {
    auto open = s.find('(');
    if (open == std::string::npos) return {s, {}};
    if (s.back() != ')') throw InputError("malformed manifold spec: " + s);
    SpecCall c;
    c.head = s.substr(0, open);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    int depth = 0;
    std::string cur;
    for (char ch : inner) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            c.args.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) c.args.push_back(cur);
    return c;
}

unsigned parse_unsigned(const std::string& s, const std::string& what) {
    try {
        return static_cast<unsigned>(std::stoul(s));
    } catch (...) {
        throw InputError("bad " + what + " parameter: " + s);
    }
}

void fill_unit_tables(GradedRing& r) {
    for (unsigned d = 0; d <= r.top_degree(); ++d)
        for (std::size_t i = 0; i < r.rank(d); ++i) {
            RatVec e(r.rank(d), Rat(0));
            e[i] = 1;
            r.set_cup(0, d, 0, i, e);
            if (d > 0) r.set_cup(d, 0, i, 0, e);
        }
}

ManifoldPtr make_closed(const std::string& name, unsigned dim, bool oriented,
                        std::shared_ptr<GradedRing> ring) {
    auto m = std::make_shared<ManifoldModel>(name, dim, oriented, ring, RatVec{Rat(1)});
    m->derive_pd_matrices();
    return m;
}

ManifoldPtr build_sphere(unsigned n, const CoeffSystem& sys) {
    if (n < 1) throw InputError("sphere(n) needs n >= 1");
    std::vector<std::size_t> ranks(n + 1, 0);
    ranks[0] = ranks[n] = 1;
    auto r = std::make_shared<GradedRing>("H(S^" + std::to_string(n) + ")", sys, n, ranks);
    fill_unit_tables(*r);
    r->set_basis_label(0, 0, "1");
    r->set_basis_label(n, 0, "s");
    return make_closed("sphere(" + std::to_string(n) + ")", n, true, r);
}

// Sign of the shuffle merging sorted disjoint index sets S and T:
// parity of the pairs (s in S, t in T) with s > t.
int shuffle_sign(unsigned S, unsigned T) {
    int inversions = 0;
    for (unsigned s = 0; s < 32; ++s)
        if (S & (1u << s))
            for (unsigned t = 0; t < s; ++t)
                if (T & (1u << t)) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

std::string subset_label(unsigned mask) {
    std::string s = "e{";
    bool first = true;
    for (unsigned b = 0; b < 32; ++b)
        if (mask & (1u << b)) {
            if (!first) s += ",";
            s += std::to_string(b + 1);
            first = false;
        }
    return s + "}";
}

ManifoldPtr build_torus(unsigned n, const CoeffSystem& sys) {
    if (n < 1) throw InputError("torus(n) needs n >= 1");
    if (n > 8) throw InputError("torus(n) supported up to n = 8");
    std::vector<std::vector<unsigned>> basis(n + 1);
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        basis[__builtin_popcount(mask)].push_back(mask);
    std::vector<std::size_t> ranks(n + 1);
    for (unsigned d = 0; d <= n; ++d) ranks[d] = basis[d].size();
    auto r = std::make_shared<GradedRing>("H(T^" + std::to_string(n) + ")", sys, n, ranks);
    std::vector<std::map<unsigned, std::size_t>> index(n + 1);
    for (unsigned d = 0; d <= n; ++d)
        for (std::size_t i = 0; i < basis[d].size(); ++i) {
            index[d][basis[d][i]] = i;
            r->set_basis_label(d, i, d == 0 ? "1" : subset_label(basis[d][i]));
        }
    for (unsigned p = 0; p <= n; ++p)
        for (unsigned q = 0; p + q <= n; ++q)
            for (std::size_t i = 0; i < basis[p].size(); ++i)
                for (std::size_t j = 0; j < basis[q].size(); ++j) {
                    unsigned S = basis[p][i], T = basis[q][j];
                    RatVec out(ranks[p + q], Rat(0));
                    if ((S & T) == 0)
                        out[index[p + q][S | T]] = Rat(shuffle_sign(S, T));
                    r->set_cup(p, q, i, j, out);
                }
    return make_closed("torus(" + std::to_string(n) + ")", n, true, r);
}

ManifoldPtr build_surface(unsigned g, const CoeffSystem& sys) {
    if (g == 0) return build_sphere(2, sys);
    std::vector<std::size_t> ranks = {1, 2 * g, 1};
    auto r = std::make_shared<GradedRing>("H(Sigma_" + std::to_string(g) + ")", sys, 2, ranks);
    fill_unit_tables(*r);
    r->set_basis_label(0, 0, "1");
    r->set_basis_label(2, 0, "w");
    for (unsigned i = 0; i < g; ++i) {
        r->set_basis_label(1, 2 * i, "a" + std::to_string(i + 1));
        r->set_basis_label(1, 2 * i + 1, "b" + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < 2 * g; ++i)
        for (std::size_t j = 0; j < 2 * g; ++j) {
            RatVec out(1, Rat(0));
            if (j == i + 1 && i % 2 == 0) out[0] = 1;
            if (j + 1 == i && j % 2 == 0) out[0] = -1;
            r->set_cup(1, 1, i, j, out);
        }
    return make_closed("surface(" + std::to_string(g) + ")", 2, true, r);
}

ManifoldPtr build_projective_plane(const CoeffSystem& sys) {
    if (!sys.is_f2()) throw ModeError("projective_plane is available in F2 mode only");
    auto r = std::make_shared<GradedRing>("H(RP^2;F2)", sys, 2, std::vector<std::size_t>{1, 1, 1});
    fill_unit_tables(*r);
    r->set_basis_label(0, 0, "1");
    r->set_basis_label(1, 0, "a");
    r->set_basis_label(2, 0, "a^2");
    r->set_cup(1, 1, 0, 0, {Rat(1)});
    return make_closed("projective_plane", 2, false, r);
}

ManifoldPtr build_complex_projective(unsigned n, const CoeffSystem& sys) {
    if (n < 1) throw InputError("complex_projective(n) needs n >= 1");
    const unsigned dim = 2 * n;
    std::vector<std::size_t> ranks(dim + 1, 0);
    for (unsigned k = 0; k <= n; ++k) ranks[2 * k] = 1;
    auto r = std::make_shared<GradedRing>("H(CP^" + std::to_string(n) + ")", sys, dim, ranks);
    for (unsigned i = 0; i <= n; ++i) {
        r->set_basis_label(2 * i, 0, i == 0 ? "1" : (i == 1 ? "h" : "h^" + std::to_string(i)));
        for (unsigned j = 0; i + j <= n; ++j) r->set_cup(2 * i, 2 * j, 0, 0, {Rat(1)});
    }
    return make_closed("complex_projective(" + std::to_string(n) + ")", dim, true, r);
}

ManifoldPtr build_euclidean(unsigned m, const CoeffSystem& sys) {
    if (m < 1) throw InputError("euclidean(m) needs m >= 1");
    std::vector<std::size_t> ranks(m + 1, 0);
    ranks[m] = 1;  // compactly-supported cohomology of R^m
    auto r = std::make_shared<GradedRing>("Hc(R^" + std::to_string(m) + ")", sys, m, ranks,
                                          /*unital=*/false);
    r->set_basis_label(m, 0, "u");
    auto man = std::make_shared<ManifoldModel>("euclidean(" + std::to_string(m) + ")", m, true, r,
                                               std::nullopt, /*compact=*/false);
    man->derive_pd_matrices();
    return man;
}

ManifoldPtr build_product(const ManifoldPtr& A, const ManifoldPtr& B) {
    if (!A->compact() || !B->compact()) throw InputError("product factors must be closed manifolds");
    if (A->coeffs() != B->coeffs()) throw InputError("product factors need one coefficient system");
    const unsigned n = A->dim() + B->dim();
    const CoeffSystem& sys = A->coeffs();

    // Degree-d basis: triples (p, i, j) with p + q = d, ordered by (p, i, j).
    struct Slot {
        unsigned p;
        std::size_t i, j;
    };
    std::vector<std::vector<Slot>> basis(n + 1);
    for (unsigned p = 0; p <= A->dim(); ++p)
        for (unsigned q = 0; q <= B->dim(); ++q)
            for (std::size_t i = 0; i < A->ring()->rank(p); ++i)
                for (std::size_t j = 0; j < B->ring()->rank(q); ++j)
                    basis[p + q].push_back({p, i, j});
    std::vector<std::size_t> ranks(n + 1);
    for (unsigned d = 0; d <= n; ++d) ranks[d] = basis[d].size();

    auto r = std::make_shared<GradedRing>("H(" + A->name() + " x " + B->name() + ")", sys, n, ranks);
    auto slot_index = [&](unsigned d, unsigned p, std::size_t i, std::size_t j) -> std::size_t {
        for (std::size_t k = 0; k < basis[d].size(); ++k)
            if (basis[d][k].p == p && basis[d][k].i == i && basis[d][k].j == j) return k;
        throw Error("product basis lookup failed");
    };
    for (unsigned d = 0; d <= n; ++d)
        for (std::size_t k = 0; k < basis[d].size(); ++k) {
            const Slot& s = basis[d][k];
            r->set_basis_label(d, k, A->ring()->basis_label(s.p, s.i) + "x" +
                                         B->ring()->basis_label(d - s.p, s.j));
        }

    for (unsigned d1 = 0; d1 <= n; ++d1)
        for (unsigned d2 = 0; d1 + d2 <= n; ++d2)
            for (std::size_t x = 0; x < basis[d1].size(); ++x)
                for (std::size_t y = 0; y < basis[d2].size(); ++y) {
                    const Slot& s = basis[d1][x];
                    const Slot& t = basis[d2][y];
                    const unsigned qa = d1 - s.p;  // degree of the B part of x
                    RatVec out(ranks[d1 + d2], Rat(0));
                    if (s.p + t.p <= A->dim() && qa + (d2 - t.p) <= B->dim()) {
                        RatVec ca = A->ring()->cup_basis(s.p, t.p, s.i, t.i);
                        RatVec cb = B->ring()->cup_basis(qa, d2 - t.p, s.j, t.j);
                        Rat koszul = (!sys.is_f2() && (qa * t.p) % 2 == 1) ? Rat(-1) : Rat(1);
                        for (std::size_t ia = 0; ia < ca.size(); ++ia) {
                            if (ca[ia] == 0) continue;
                            for (std::size_t jb = 0; jb < cb.size(); ++jb) {
                                if (cb[jb] == 0) continue;
                                std::size_t k = slot_index(d1 + d2, s.p + t.p, ia, jb);
                                out[k] = sys.reduce(out[k] + koszul * ca[ia] * cb[jb]);
                            }
                        }
                    }
                    r->set_cup(d1, d2, x, y, out);
                }

    return make_closed("product(" + A->name() + "," + B->name() + ")", n,
                       A->oriented() && B->oriented(), r);
}

}  // namespace

ManifoldPtr builtin_manifold(const std::string& spec, const CoeffSystem& sys) {
    SpecCall c = parse_spec(spec);
    if (c.head == "sphere") {
        if (c.args.size() != 1) throw InputError("sphere(n) takes one parameter");
        return build_sphere(parse_unsigned(c.args[0], "sphere"), sys);
    }
    if (c.head == "torus") {
        if (c.args.size() != 1) throw InputError("torus(n) takes one parameter");
        return build_torus(parse_unsigned(c.args[0], "torus"), sys);
    }
    if (c.head == "surface") {
        if (c.args.size() != 1) throw InputError("surface(g) takes one parameter");
        return build_surface(parse_unsigned(c.args[0], "surface"), sys);
    }
    if (c.head == "projective_plane") return build_projective_plane(sys);
    if (c.head == "complex_projective") {
        if (c.args.size() != 1) throw InputError("complex_projective(n) takes one parameter");
        return build_complex_projective(parse_unsigned(c.args[0], "complex_projective"), sys);
    }
    if (c.head == "euclidean") {
        if (c.args.size() != 1) throw InputError("euclidean(m) takes one parameter");
        return build_euclidean(parse_unsigned(c.args[0], "euclidean"), sys);
    }
    if (c.head == "product") {
        if (c.args.size() != 2) throw InputError("product(A,B) takes two parameters");
        return build_product(builtin_manifold(c.args[0], sys), builtin_manifold(c.args[1], sys));
    }
    throw InputError("unknown builtin manifold: " + spec);
}

std::string homology_to_string(const HomologyElement& x) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (i) os << ", ";
        os << rat_to_string(x.coords[i]);
    }
    os << "] (H_" << x.degree << ")";
    return os.str();
}

}  // namespace multibord
