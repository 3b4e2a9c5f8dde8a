#pragma once

#include <filesystem>
#include <string>

namespace autosg {

/// The four-field problem statement that every prompt binding draws from.
struct TaskPrompt {
    std::string desc;         ///< natural-language task description
    int dim = 0;              ///< decision-variable dimensionality
    long long budget = 0;     ///< expensive function-evaluation budget
    std::string search_space; ///< bounds / structure of the search space

    void validate() const;
};

/// Parse a `key = value` task file with keys desc, dim, budget, search_space.
TaskPrompt parse_task(const std::filesystem::path& path);
TaskPrompt parse_task_text(std::string_view text);

} // namespace autosg
