// Selects centers for a small two-mass instance and checks them against the fairness axioms.

#include "prfair/io/generators.hpp"
#include "prfair/prfair.hpp"

#include <iostream>

int main() {
    using namespace prfair;

    const Instance inst = io::generate("two_mass", {{"a", 100}, {"b", 10}, {"k", 11}});
    const auto     selection = select_prf_centers(inst);

    std::cout << "selected:";
    for (const std::size_t c : selection.outcome) std::cout << ' ' << inst.candidates()[c][0];
    std::cout << '\n';

    for (const Axiom axiom : {Axiom::up, Axiom::pf, Axiom::core}) {
        const auto report = check(inst, selection.outcome, axiom);
        std::cout << to_string(axiom) << ": " << (report.satisfied ? "satisfied" : "violated") << '\n';
    }
    std::cout << "MSD to closest center: " << msd_j(inst, selection.outcome, 1) << '\n';
}
