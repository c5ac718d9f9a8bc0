#ifndef MULTIBORD_IO_FIXTURE_HPP
#define MULTIBORD_IO_FIXTURE_HPP

#include <map>

#include "multibord/algebra/immersion.hpp"
#include "multibord/geom/curve.hpp"
#include "multibord/geom/mesh.hpp"

namespace multibord {

// Named geometry scenario: a builtin mesh/curve with parameters, or a file.
struct GeometryCase {
    std::string kind;     // "mesh-builtin", "curve-builtin", "mesh-file"
    std::string builtin;  // whitney | torus | sphere-r3 | sphere-r4 | boy | crossing-tori |
                          // circle | figure8 | limacon
    std::string path;     // mesh-file: .off or .json
    unsigned n = 16;      // resolution / vertex count
    std::uint64_t seed = 20240809;
};

struct FixtureDocument {
    std::string version = "multibord-fixture-1";
    std::map<std::string, ManifoldPtr> manifolds;
    std::map<std::string, ImmersionPtr> immersions;
    std::map<std::string, GeometryCase> geometry;
};

// Load + full validation (rings, duality, immersion invariants). Violations
// raise FixtureError.
FixtureDocument load_fixture(const std::string& path);
void save_fixture(const FixtureDocument& doc, const std::string& path);

// The shipped fixture set: builtin manifolds, the four immersion fixtures,
// and the geometry case registry used by tests and the CLI.
FixtureDocument builtin_fixture();

ImmersedTriMesh build_geometry_mesh(const GeometryCase& g);
ImmersedPolyCurve build_geometry_curve(const GeometryCase& g);

}  // namespace multibord

#endif
