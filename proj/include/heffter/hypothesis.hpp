#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace heffter {

/// Named hypothesis checks, in the order they were evaluated.
struct Admissibility {
    std::vector<std::pair<std::string, bool>> checks;

    void add(std::string name, bool holds) { checks.emplace_back(std::move(name), holds); }
    [[nodiscard]] bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
    }
    [[nodiscard]] std::string failures() const {
        std::string out;
        for (const auto& [name, holds] : checks)
            if (!holds) out += (out.empty() ? "" : "; ") + name;
        return out;
    }
};

} // namespace heffter
