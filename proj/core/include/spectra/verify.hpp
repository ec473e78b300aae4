#pragma once

#include <string>
#include <vector>

namespace spectra::verify {

/// One invariant check: pass iff |computed - target| <= tolerance, except
/// for sign checks which set pass directly.
struct Check {
    std::string name;
    double target = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<Check> checks;
    bool overall = true;

    void merge(const Report& other);
};

Report verify_specfun();
Report verify_resolvents();
Report verify_stone();
Report verify_charfun();
Report verify_all();

/// Dispatch by suite name ("specfun", "resolvents", "stone", "charfun",
/// "all"); throws std::invalid_argument on an unknown name.
Report run_suite(const std::string& suite);

}  // namespace spectra::verify
