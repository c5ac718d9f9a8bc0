#ifndef MULTIBORD_MP_VERIFY_HPP
#define MULTIBORD_MP_VERIFY_HPP

#include <cstdint>
#include <map>

#include "multibord/mp/assemble.hpp"

namespace multibord {

// Global sign identifying the tangent-solver output with the double-point
// homology class fed to the Euler-class reconstruction. Calibrated once on
// the Whitney sphere and reported in every verdict.
inline constexpr int kSdfClassCalibration = -1;

struct VerifyOptions {
    std::uint64_t seed = 20240809;
    unsigned mesh_n = 16;           // grid resolution behind the mesh builders
    unsigned grid_n = 64;           // fold / tangent scan resolution
    unsigned curve_vertices = 256;
    std::array<double, 4> direction{0.3171893, 0.5494621, 0.7736219, 0.4123107};  // normalized at use
    Rat perturb_magnitude = Rat(1, 2048);
    int threads = 0;
};

struct VerdictReport {
    std::string case_name;
    std::string kind;  // "lemma-double" or "euler-corollary"
    std::string mode;  // "Z" or "F2"
    bool pass = false;
    std::string lhs, rhs;
    std::string detail;
    std::map<std::string, std::string> data;  // structured report fields
    VerifyOptions options;
};

// Lemma-of-the-double-locus verdict: compares the enumerated double-point
// data against the fold/tangent solver, integer-signed in even codimension
// and mod 2 in odd.
VerdictReport verify_lemma_double(const std::string& case_name, const VerifyOptions& opts = {});

// Euler-class verdict in R^4: pushoff count vs ordered signed doubles vs the
// algebraic reconstruction from the tangent-direction class.
VerdictReport verify_euler_corollary(const std::string& case_name, const VerifyOptions& opts = {});

std::vector<std::string> lemma_case_names();
std::vector<std::string> euler_case_names();

}  // namespace multibord

#endif
