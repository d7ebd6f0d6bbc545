#pragma once

#include <string>

namespace tvo {

/// Outcome of an exhaustive exact check: pass/fail, number of comparisons,
/// and a description of the first mismatch when one exists.
struct CheckReport {
    bool pass = true;
    long checks = 0;
    std::string first_failure;

    void record_failure(const std::string& what) {
        if (pass) {
            pass = false;
            first_failure = what;
        }
    }
    void merge(const CheckReport& o) {
        checks += o.checks;
        if (pass && !o.pass) {
            pass = false;
            first_failure = o.first_failure;
        }
    }
};

}  // namespace tvo
