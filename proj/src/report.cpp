#include "quasiq/report.hpp"

namespace qq {

void CheckResult::add(Witness w) {
    ++total;
    if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
}

void CheckResult::add_vec(std::vector<int> tuple, const std::vector<Scalar>& v, std::string note) {
    Witness w;
    w.tuple = std::move(tuple);
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) w.values.emplace_back(static_cast<int>(i), v[i]);
    if (w.values.empty()) return;
    w.note = std::move(note);
    add(std::move(w));
}

void CheckResult::add_poly(const ExtElement& r, std::vector<int> prefix, const std::string& note) {
    for (const auto& [m, c] : r.terms()) {
        Witness w;
        w.tuple = prefix;
        for (auto g : m) w.tuple.push_back(g);
        w.values.emplace_back(-1, c);
        std::string lbl;
        for (auto g : m) lbl += (lbl.empty() ? "" : "*") + r.gens()->labels[g];
        w.note = note.empty() ? lbl : note + ": " + lbl;
        add(std::move(w));
    }
}

bool Report::pass() const {
    for (const auto& c : checks)
        if (!c.pass()) return false;
    return true;
}

CheckResult& Report::get(const std::string& id) {
    for (auto& c : checks)
        if (c.id == id) return c;
    checks.push_back(CheckResult{id, {}, 0});
    return checks.back();
}

const CheckResult* Report::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

void Report::merge(const Report& o, const std::string& prefix) {
    for (const auto& c : o.checks) {
        CheckResult& t = get(prefix + c.id);
        for (const auto& w : c.witnesses)
            if (t.witnesses.size() < kWitnessCap) t.witnesses.push_back(w);
        t.total += c.total;
    }
}

size_t Report::total() const {
    size_t n = 0;
    for (const auto& c : checks) n += c.total;
    return n;
}

}  // namespace qq
