// Cloning on the 2^2 x 2^2 composite, then the Hilbert-space counterpart.

#include "qlogic/cloning.hpp"
#include "qlogic/fixtures.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/reports.hpp"

#include <iostream>

using namespace qlogic;

int main() {
    CompositeModel M(boolean_product(share(read_logic(default_fixture_dir() / "boolean2.json"))));
    const FiniteLogic& E = M.factor();
    CloneProblem P(M, {E.element("e1"), E.element("e2")}, E.element("e1"));

    auto r = clone_search(P);
    std::cout << r.examined << " automorphisms examined, " << r.cloner_count << " cloner(s)\n";
    auto cert = theorem1_certificate(P, r.cloner);
    for (const auto& e : cert.entries) {
        std::cout << "  P(" << E.label(e.e2) << "|" << E.label(e.e1) << ") = " << e.s << ", through the cloner "
                  << e.pulled << '\n';
    }

    using namespace qlogic::hilbert;
    Vector plus(2);
    plus << 1, 1;
    auto w = no_cloning_witness(PureVector::basis(2, 0), PureVector::normalized(plus));
    std::cout << "\n|0>, |+>: s = " << w.s << ", s^2 = " << w.s_squared
              << (w.cloneable ? ", cloneable\n" : ", not cloneable\n");
    std::vector<PureVector> basis{PureVector::basis(2, 0), PureVector::basis(2, 1)};
    std::cout << "CNOT copies the basis: " << std::boolalpha
              << test_unitary_cloner(basis_copier(2), basis, PureVector::basis(2, 0)) << '\n';
}
