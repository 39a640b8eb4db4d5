// Conditioning on MO2 versus a Boolean algebra.
// On 2^3 every state has one conditional; on MO2 conditioning a vertex on
// `a` leaves the value of `b` open.

#include "qlogic/fixtures.hpp"
#include "qlogic/reports.hpp"
#include "qlogic/state_space.hpp"

#include <iostream>

using namespace qlogic;

int main() {
    auto mo2 = share(read_logic(default_fixture_dir() / "MO2.json"));
    StatePolytope P(mo2);
    const Element a = mo2->element("a");

    std::cout << "MO2 has " << P.vertices().size() << " extreme states\n";
    auto r = conditional_probability(P, P.vertices()[0], a);
    std::cout << "conditioning vertex 0 on a: " << to_string(r.kind) << '\n';
    if (r.witnesses) {
        std::cout << "  " << state_json(*mo2, r.witnesses->first).dump() << '\n';
        std::cout << "  " << state_json(*mo2, r.witnesses->second).dump() << '\n';
    }
    auto g = check_condition_G(P);
    std::cout << "condition G: " << (g.holds ? "holds" : "fails at " + mo2->label(*g.e)) << "\n\n";

    auto b3 = share(read_logic(default_fixture_dir() / "boolean3.json"));
    StatePolytope Q(b3);
    std::vector<Rational> w{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
    std::vector<Rational> values(b3->size());
    for (Element x = 0; x < b3->size(); ++x) {
        const auto& at = atoms(*b3);
        for (std::size_t i = 0; i < at.size(); ++i) {
            if (b3->leq(at[i], x)) values[x] += w[i];
        }
    }
    State rho = make_state(*b3, values);
    const Element xy = b3->element("{x,y}");
    auto c = conditional_probability(Q, rho, xy);
    std::cout << "2^3, rho = (1/2, 1/3, 1/6), given {x,y}: " << to_string(c.kind) << '\n';
    std::cout << "  " << state_json(*b3, *c.state).dump() << '\n';
}
