// Writes the bundled fixture logics, composites, morphisms and Hilbert demo
// data into a directory. The manifest with expected properties is
// maintained by hand.

#include "qlogic/builders.hpp"
#include "qlogic/composite.hpp"
#include "qlogic/files.hpp"
#include "qlogic/hilbert_io.hpp"
#include "qlogic/logic_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace qlogic;

namespace {

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

void write_logic(const fs::path& dir, const std::string& name, const LogicDescription& d) {
    write_text(dir / (name + ".json"), dump_description(d));
}

void write_product(const fs::path& dir, const std::string& factor, const std::string& name) {
    LogicPtr E = share(read_logic(dir / (factor + ".json")));
    CompositeLogic C = boolean_product(E);
    write_logic(dir, name + "_ambient", describe(*C.ambient));
    Json j = composite_json(factor + ".json", name + "_ambient.json", C);
    write_text(dir / (name + ".json"), j.dump() + "\n");
}

void write_morphism(const fs::path& dir, const std::string& name, const std::string& source,
                    const std::string& target, const std::vector<Element>& map) {
    Json j;
    j["source"] = source + ".json";
    j["target"] = target + ".json";
    j["map"] = map;
    write_text(dir / (name + ".json"), j.dump() + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <dir>\n";
        return 2;
    }
    const fs::path dir = argv[1];
    fs::create_directories(dir);

    for (std::size_t k = 1; k <= 4; ++k) write_logic(dir, "boolean" + std::to_string(k), boolean_algebra(k));
    for (std::size_t p = 1; p <= 3; ++p) write_logic(dir, "MO" + std::to_string(p), mo_lantern(p));
    write_logic(dir, "O6", hexagon());
    write_logic(dir, "grid3x3", grid_with_dead_atoms());

    write_product(dir, "boolean1", "prod11");
    write_product(dir, "boolean2", "prod22");
    write_product(dir, "boolean3", "prod33");

    // boolean2: 0, e1, e2, 1.  boolean3: index = subset mask over x, y, z.
    write_morphism(dir, "embed_2to3", "boolean2", "boolean3", {0, 1, 6, 7});
    write_morphism(dir, "identity_boolean3", "boolean3", "boolean3", {0, 1, 2, 3, 4, 5, 6, 7});
    write_morphism(dir, "swap_xy", "boolean3", "boolean3", {0, 2, 1, 3, 4, 6, 5, 7});
    write_morphism(dir, "unit_to_zero", "boolean2", "boolean3", {0, 1, 6, 0});

    Json h;
    const double r = 1.0 / std::sqrt(2.0);
    h["vectors"]["ket0"] = hilbert::vector_json(hilbert::Vector::Unit(2, 0));
    h["vectors"]["ket1"] = hilbert::vector_json(hilbert::Vector::Unit(2, 1));
    hilbert::Vector plus(2), minus(2);
    plus << r, r;
    minus << r, -r;
    h["vectors"]["plus"] = hilbert::vector_json(plus);
    h["vectors"]["minus"] = hilbert::vector_json(minus);
    h["matrices"]["maximally_mixed3"] = hilbert::matrix_json(hilbert::Matrix::Identity(3, 3) / 3.0);
    h["matrices"]["e_diag110"] = hilbert::matrix_json(hilbert::ProjectionOperator::diagonal({1, 1, 0}).matrix());
    h["matrices"]["f_diag011"] = hilbert::matrix_json(hilbert::ProjectionOperator::diagonal({0, 1, 1}).matrix());
    h["matrices"]["copier2"] = hilbert::matrix_json(hilbert::basis_copier(2).matrix());
    write_text(dir / "hilbert_demo.json", h.dump(2) + "\n");

    std::cout << "fixtures written to " << dir.string() << "\n";
    return 0;
}
