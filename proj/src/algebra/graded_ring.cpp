#include "multibord/algebra/graded_ring.hpp"

#include <sstream>

namespace multibord {

GradedRing::GradedRing(std::string name, CoeffSystem coeffs, unsigned top_degree,
                       std::vector<std::size_t> ranks, bool unital)
    : name_(std::move(name)), coeffs_(coeffs), top_(top_degree), ranks_(std::move(ranks)), unital_(unital) {
    if (ranks_.size() != top_ + 1) throw FixtureError("ring " + name_ + ": ranks must cover degrees 0..top");
    if (unital_ && ranks_[0] < 1) throw FixtureError("ring " + name_ + ": unital ring needs rank(0) >= 1");
}

std::size_t GradedRing::tensor_index(unsigned p, unsigned q, std::size_t i, std::size_t j,
                                     std::size_t k) const {
    return (i * rank(q) + j) * rank(p + q) + k;
}

void GradedRing::set_cup(unsigned p, unsigned q, std::size_t i, std::size_t j, const RatVec& coords) {
    if (p + q > top_) throw DegreeError("cup table beyond top degree");
    if (i >= rank(p) || j >= rank(q) || coords.size() != rank(p + q))
        throw DimensionError("cup table shape mismatch");
    auto& t = tables_[{p, q}];
    if (t.empty()) t.assign(rank(p) * rank(q) * rank(p + q), Rat(0));
    for (std::size_t k = 0; k < coords.size(); ++k)
        t[tensor_index(p, q, i, j, k)] = coeffs_.reduce(coords[k]);
}

bool GradedRing::has_table(unsigned p, unsigned q) const { return tables_.count({p, q}) > 0; }

RatVec GradedRing::cup_basis(unsigned p, unsigned q, std::size_t i, std::size_t j) const {
    RatVec out(rank(p + q), Rat(0));
    auto it = tables_.find({p, q});
    if (it == tables_.end()) return out;  // absent table = zero products
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = it->second[tensor_index(p, q, i, j, k)];
    return out;
}

void GradedRing::set_basis_label(unsigned d, std::size_t i, const std::string& label) {
    labels_[{d, i}] = label;
}

std::string GradedRing::basis_label(unsigned d, std::size_t i) const {
    auto it = labels_.find({d, i});
    if (it != labels_.end()) return it->second;
    std::ostringstream os;
    os << "b" << d << "_" << i;
    return os.str();
}

bool GradedRing::same_as(const GradedRing& o) const {
    return name_ == o.name_ && coeffs_ == o.coeffs_ && top_ == o.top_ && ranks_ == o.ranks_ &&
           unital_ == o.unital_ && tables_ == o.tables_;
}

bool Element::operator==(const Element& o) const {
    return degree == o.degree && coords == o.coords && ring && o.ring && ring->same_as(*o.ring);
}

Element zero_element(const RingPtr& ring, unsigned degree) {
    if (!ring) throw InputError("null ring");
    if (degree > ring->top_degree()) throw DegreeError("element degree beyond top degree");
    return Element{ring, degree, RatVec(ring->rank(degree), Rat(0))};
}

Element basis_element(const RingPtr& ring, unsigned degree, std::size_t index) {
    Element e = zero_element(ring, degree);
    if (index >= ring->rank(degree)) throw DimensionError("basis index out of range");
    e.coords[index] = 1;
    return e;
}

Element unit_element(const RingPtr& ring) {
    if (!ring->unital()) throw ModeError("ring " + ring->name() + " has no unit");
    return basis_element(ring, 0, 0);
}

namespace {
void require_same_ring(const Element& a, const Element& b) {
    if (!a.ring || !b.ring || (a.ring.get() != b.ring.get() && !a.ring->same_as(*b.ring)))
        throw InputError("elements from different rings");
}
}  // namespace

Element cup(const Element& a, const Element& b) {
    require_same_ring(a, b);
    const GradedRing& R = *a.ring;
    if (a.degree + b.degree > R.top_degree())
        throw DegreeError("cup degree " + std::to_string(a.degree + b.degree) + " beyond top degree " +
                          std::to_string(R.top_degree()));
    Element out = zero_element(a.ring, a.degree + b.degree);
    const CoeffSystem& sys = R.coeffs();
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0) continue;
        for (std::size_t j = 0; j < b.coords.size(); ++j) {
            if (b.coords[j] == 0) continue;
            RatVec t = R.cup_basis(a.degree, b.degree, i, j);
            Rat c = a.coords[i] * b.coords[j];
            for (std::size_t k = 0; k < out.coords.size(); ++k)
                out.coords[k] = sys.reduce(out.coords[k] + c * t[k]);
        }
    }
    return out;
}

Element scale_add(const Rat& c1, const Element& a, const Rat& c2, const Element& b) {
    require_same_ring(a, b);
    if (a.degree != b.degree) throw DegreeError("scale_add degree mismatch");
    Element out = zero_element(a.ring, a.degree);
    const CoeffSystem& sys = a.ring->coeffs();
    for (std::size_t k = 0; k < out.coords.size(); ++k)
        out.coords[k] = sys.reduce(c1 * a.coords[k] + c2 * b.coords[k]);
    return out;
}

Element scale(const Rat& c, const Element& a) {
    return scale_add(c, a, Rat(0), zero_element(a.ring, a.degree));
}

std::string element_to_string(const Element& a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0) continue;
        if (!first) os << " + ";
        os << rat_to_string(a.coords[i]) << "*" << a.ring->basis_label(a.degree, i);
        first = false;
    }
    if (first) os << "0";
    os << " (deg " << a.degree << ")";
    return os.str();
}

std::vector<RingViolation> validate_ring(const GradedRing& ring) {
    std::vector<RingViolation> out;
    RingPtr R = std::make_shared<GradedRing>(ring);
    const unsigned n = ring.top_degree();
    const bool skew = !ring.coeffs().is_f2();

    if (ring.unital()) {
        Element one = unit_element(R);
        for (unsigned d = 0; d <= n; ++d)
            for (std::size_t i = 0; i < ring.rank(d); ++i) {
                Element b = basis_element(R, d, i);
                if (!(cup(one, b) == b))
                    out.push_back({"unit", 0, d, 0, 0, i, 0, "1*b != b at " + ring.basis_label(d, i)});
                if (!(cup(b, one) == b))
                    out.push_back({"unit", d, 0, 0, i, 0, 0, "b*1 != b at " + ring.basis_label(d, i)});
            }
    }

    for (unsigned p = 0; p <= n; ++p)
        for (unsigned q = 0; p + q <= n; ++q)
            for (std::size_t i = 0; i < ring.rank(p); ++i)
                for (std::size_t j = 0; j < ring.rank(q); ++j) {
                    Element ab = cup(basis_element(R, p, i), basis_element(R, q, j));
                    Element ba = cup(basis_element(R, q, j), basis_element(R, p, i));
                    Rat sign = (skew && (p * q) % 2 == 1) ? Rat(-1) : Rat(1);
                    if (!(ab == scale(sign, ba)))
                        out.push_back({"commutativity", p, q, 0, i, j, 0,
                                       ring.basis_label(p, i) + "*" + ring.basis_label(q, j)});
                }

    for (unsigned p = 0; p <= n; ++p)
        for (unsigned q = 0; p + q <= n; ++q)
            for (unsigned r = 0; p + q + r <= n; ++r)
                for (std::size_t i = 0; i < ring.rank(p); ++i)
                    for (std::size_t j = 0; j < ring.rank(q); ++j)
                        for (std::size_t k = 0; k < ring.rank(r); ++k) {
                            Element a = basis_element(R, p, i), b = basis_element(R, q, j),
                                    c = basis_element(R, r, k);
                            if (!(cup(cup(a, b), c) == cup(a, cup(b, c))))
                                out.push_back({"associativity", p, q, r, i, j, k,
                                               ring.basis_label(p, i) + "*" + ring.basis_label(q, j) +
                                                   "*" + ring.basis_label(r, k)});
                        }
    return out;
}

}  // namespace multibord
