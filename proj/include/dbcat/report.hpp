#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace dbcat {

struct CheckLine {
    std::string id;
    bool pass = false;
    std::string detail;
};

/// Named pass/fail checks. Lines are kept sorted by id for stable output.
struct Report {
    std::vector<CheckLine> lines;
    std::vector<std::string> notes;

    void add(std::string id, bool pass, std::string detail = {}) {
        lines.push_back({std::move(id), pass, std::move(detail)});
    }
    bool passed() const {
        return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
    }
    const CheckLine* first_failure() const {
        for (const CheckLine& l : lines) {
            if (!l.pass) return &l;
        }
        return nullptr;
    }
    void sort() {
        std::stable_sort(lines.begin(), lines.end(), [](const CheckLine& a, const CheckLine& b) { return a.id < b.id; });
    }
};

}  // namespace dbcat
