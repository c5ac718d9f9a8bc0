// Test-only oracle: simplicial cochain cohomology with cup products, driven
// by boundary/coboundary matrices and the exact linear algebra module. Kept
// independent of the GradedRing/ManifoldModel construction it cross-checks.
#ifndef MULTIBORD_TESTS_SIMPLICIAL_ORACLE_HPP
#define MULTIBORD_TESTS_SIMPLICIAL_ORACLE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "multibord/exact/matrix.hpp"

namespace multibord::testsupport {

struct SimplicialSurface {
    std::size_t n_vertices = 0;
    std::vector<std::array<int, 3>> triangles;       // vertex-sorted triples
    std::vector<std::array<int, 2>> edges;           // vertex-sorted pairs, lex order
    std::map<std::array<int, 2>, std::size_t> edge_index;

    static SimplicialSurface from_triangles(std::size_t n_vertices,
                                            std::vector<std::array<int, 3>> tris) {
        SimplicialSurface s;
        s.n_vertices = n_vertices;
        for (auto& t : tris) std::sort(t.begin(), t.end());
        std::sort(tris.begin(), tris.end());
        s.triangles = tris;
        std::map<std::array<int, 2>, int> count;
        for (const auto& t : tris) {
            count[{t[0], t[1]}]++;
            count[{t[0], t[2]}]++;
            count[{t[1], t[2]}]++;
        }
        for (const auto& [e, c] : count) {
            if (c != 2) throw Error("oracle surface is not closed at an edge");
            s.edge_index[e] = s.edges.size();
            s.edges.push_back(e);
        }
        return s;
    }

    // delta^0: C^0 -> C^1, (d phi)([a,b]) = phi(b) - phi(a).
    ExactMatrix coboundary0(const CoeffSystem& sys) const {
        ExactMatrix d(sys, edges.size(), n_vertices);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            d.set(e, edges[e][1], Rat(1));
            d.set(e, edges[e][0], sys.reduce(Rat(-1)));
        }
        return d;
    }

    // delta^1: C^1 -> C^2, (d psi)([a,b,c]) = psi(bc) - psi(ac) + psi(ab).
    ExactMatrix coboundary1(const CoeffSystem& sys) const {
        ExactMatrix d(sys, triangles.size(), edges.size());
        for (std::size_t t = 0; t < triangles.size(); ++t) {
            const auto& tr = triangles[t];
            d.set(t, edge_index.at({tr[1], tr[2]}), Rat(1));
            d.set(t, edge_index.at({tr[0], tr[2]}), sys.reduce(Rat(-1)));
            d.set(t, edge_index.at({tr[0], tr[1]}), Rat(1));
        }
        return d;
    }

    // Alexander-Whitney cup on ordered simplices:
    // (phi cup psi)([a<b<c]) = phi([a,b]) * psi([b,c]).
    RatVec cup_cochain(const RatVec& phi, const RatVec& psi, const CoeffSystem& sys) const {
        RatVec out(triangles.size(), Rat(0));
        for (std::size_t t = 0; t < triangles.size(); ++t) {
            const auto& tr = triangles[t];
            out[t] = sys.reduce(phi[edge_index.at({tr[0], tr[1]})] * psi[edge_index.at({tr[1], tr[2]})]);
        }
        return out;
    }
};

// Quotient (span of cycle basis) / (column space of boundaries), with exact
// coordinates. SNF route over Z, greedy column-selection route over fields.
class CochainQuotient {
  public:
    CochainQuotient(const CoeffSystem& sys, std::vector<RatVec> cycle_basis, ExactMatrix boundaries)
        : sys_(sys), boundaries_(std::move(boundaries)) {
        const std::size_t ambient = boundaries_.rows();
        Z_ = ExactMatrix(sys, ambient, cycle_basis.size());
        for (std::size_t j = 0; j < cycle_basis.size(); ++j)
            for (std::size_t i = 0; i < ambient; ++i) Z_.set(i, j, cycle_basis[j][i]);

        // Express boundaries in cycle coordinates: Z * X = B columnwise.
        ExactMatrix X(sys, Z_.cols(), boundaries_.cols());
        for (std::size_t j = 0; j < boundaries_.cols(); ++j) {
            RatVec col(ambient);
            for (std::size_t i = 0; i < ambient; ++i) col[i] = boundaries_.at(i, j);
            auto x = solve_linear(Z_, col);
            if (!x) throw Error("oracle: boundary not contained in cycle lattice");
            for (std::size_t i = 0; i < x->size(); ++i) X.set(i, j, (*x)[i]);
        }

        if (sys.kind == CoeffKind::Integers) {
            SnfResult snf = smith_normal_form(X);
            U_ = snf.U;
            const std::size_t steps = std::min(X.rows(), X.cols());
            for (std::size_t i = 0; i < X.rows(); ++i) {
                Rat d = i < steps ? snf.D.at(i, i) : Rat(0);
                if (d == 0) free_rows_.push_back(i);
                else if (d != 1) torsion_.push_back(rat_num(d));
            }
        } else {
            // Greedy: cycle columns independent modulo the boundary span.
            ExactMatrix cur = X_basis_block(X);
            (void)cur;
            std::vector<RatVec> cols;
            for (std::size_t j = 0; j < X.cols(); ++j) {
                RatVec c(X.rows());
                for (std::size_t i = 0; i < X.rows(); ++i) c[i] = X.at(i, j);
                cols.push_back(c);
            }
            std::size_t base_rank = rank(X);
            std::vector<RatVec> sel = cols;
            for (std::size_t i = 0; i < Z_.cols(); ++i) {
                RatVec e(Z_.cols(), Rat(0));
                e[i] = 1;
                sel.push_back(e);
                ExactMatrix M(sys, Z_.cols(), sel.size());
                for (std::size_t j = 0; j < sel.size(); ++j)
                    for (std::size_t k = 0; k < Z_.cols(); ++k) M.set(k, j, sel[j][k]);
                if (rank(M) > base_rank) {
                    ++base_rank;
                    free_rows_.push_back(i);
                } else {
                    sel.pop_back();
                }
            }
            Xf_ = X;
        }
    }

    std::size_t free_rank() const { return free_rows_.size(); }
    const std::vector<Int>& torsion() const { return torsion_; }

    // Quotient coordinates of a cocycle given in ambient coordinates.
    RatVec coords(const RatVec& v) const {
        auto x = solve_linear(Z_, v);
        if (!x) throw Error("oracle: vector is not a cocycle in the tracked lattice");
        if (sys_.kind == CoeffKind::Integers) {
            RatVec y = U_.apply(*x);
            RatVec out;
            for (auto i : free_rows_) out.push_back(y[i]);
            return out;
        }
        // Field: solve [boundaries-in-Z-coords | selected] coeffs = x.
        ExactMatrix M(sys_, Z_.cols(), Xf_.cols() + free_rows_.size());
        for (std::size_t j = 0; j < Xf_.cols(); ++j)
            for (std::size_t i = 0; i < Z_.cols(); ++i) M.set(i, j, Xf_.at(i, j));
        for (std::size_t j = 0; j < free_rows_.size(); ++j)
            M.set(free_rows_[j], Xf_.cols() + j, Rat(1));
        auto sol = solve_linear(M, *x);
        if (!sol) throw Error("oracle: quotient coordinate solve failed");
        RatVec out;
        for (std::size_t j = 0; j < free_rows_.size(); ++j) out.push_back((*sol)[Xf_.cols() + j]);
        return out;
    }

    // A representative cocycle for quotient basis index i.
    RatVec representative(std::size_t i) const {
        RatVec xz(Z_.cols(), Rat(0));
        if (sys_.kind == CoeffKind::Integers) {
            auto Uinv = inverse(U_);
            if (!Uinv) throw Error("oracle: U not invertible");
            RatVec y(Z_.cols(), Rat(0));
            y[free_rows_[i]] = 1;
            xz = Uinv->apply(y);
        } else {
            xz[free_rows_[i]] = 1;
        }
        return Z_.apply(xz);
    }

  private:
    static ExactMatrix X_basis_block(const ExactMatrix& X) { return X; }

    CoeffSystem sys_;
    ExactMatrix boundaries_;
    ExactMatrix Z_;
    ExactMatrix U_;   // Z route
    ExactMatrix Xf_;  // field route
    std::vector<std::size_t> free_rows_;
    std::vector<Int> torsion_;
};

// H^1 and H^2 of a closed surface via the quotient machinery.
struct SurfaceCohomology {
    SimplicialSurface surface;
    CoeffSystem sys;
    CochainQuotient h1;
    CochainQuotient h2;

    SurfaceCohomology(SimplicialSurface s, const CoeffSystem& cs)
        : surface(std::move(s)),
          sys(cs),
          h1(cs, kernel_basis(surface.coboundary1(cs)), surface.coboundary0(cs)),
          h2(cs, full_basis(surface.triangles.size()), surface.coboundary1(cs)) {}

    static std::vector<RatVec> full_basis(std::size_t n) {
        std::vector<RatVec> b;
        for (std::size_t i = 0; i < n; ++i) {
            RatVec v(n, Rat(0));
            v[i] = 1;
            b.push_back(v);
        }
        return b;
    }

    RatVec cup_h2_coords(const RatVec& phi, const RatVec& psi) const {
        return h2.coords(surface.cup_cochain(phi, psi, sys));
    }
};

// Standard 18-triangle flat torus: 3x3 vertex grid, each grid square split
// along the (i,j)-(i+1,j+1) diagonal.
inline SimplicialSurface torus_18() {
    auto vid = [](int i, int j) { return 3 * ((i % 3 + 3) % 3) + ((j % 3 + 3) % 3); };
    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            tris.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
        }
    return SimplicialSurface::from_triangles(9, tris);
}

// Minimal 6-vertex, 10-triangle projective plane.
inline SimplicialSurface rp2_10() {
    std::vector<std::array<int, 3>> tris = {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                            {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
    return SimplicialSurface::from_triangles(6, tris);
}

}  // namespace multibord::testsupport

#endif
