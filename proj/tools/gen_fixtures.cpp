// Regenerates the fixture JSON files shipped in fixtures/.
#include <iostream>

#include "multibord/io/fixture.hpp"

using namespace multibord;

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "fixtures";
    FixtureDocument doc = builtin_fixture();
    save_fixture(doc, dir + "/builtin.json");
    // Round-trip check: the saved document must load and validate.
    FixtureDocument back = load_fixture(dir + "/builtin.json");
    std::cout << "wrote " << dir << "/builtin.json (" << back.manifolds.size() << " manifolds, "
              << back.immersions.size() << " immersions, " << back.geometry.size()
              << " geometry cases)\n";
    return 0;
}
