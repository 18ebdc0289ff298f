#pragma once

#include "quasiq/ext.hpp"
#include "quasiq/linalg.hpp"
#include "quasiq/scalar.hpp"

#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace qq {

inline constexpr size_t kWitnessCap = 10;

// A failing basis tuple with the offending output coordinates.
struct Witness {
    std::vector<int> tuple;
    std::vector<std::pair<int, Scalar>> values;
    std::string note;
};

struct CheckResult {
    std::string id;
    std::vector<Witness> witnesses;  // at most kWitnessCap kept
    size_t total = 0;
    bool pass() const { return total == 0; }
    void add(Witness w);
    // Adds a witness for every nonzero coordinate block of v.
    void add_vec(std::vector<int> tuple, const std::vector<Scalar>& v, std::string note = {});
    // One witness per term of a nonzero polynomial residual.
    void add_poly(const ExtElement& r, std::vector<int> prefix = {}, const std::string& note = {});
};

struct Report {
    std::deque<CheckResult> checks;  // deque: references from get() stay valid
    bool pass() const;
    CheckResult& get(const std::string& id);  // creates when absent
    const CheckResult* find(const std::string& id) const;
    void merge(const Report& o, const std::string& prefix = {});
    size_t total() const;
};

}  // namespace qq
