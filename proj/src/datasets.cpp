#include "duelbench/prefmat.hpp"

#include <array>
#include <stdexcept>

namespace duelbench {
namespace {

// Only the strictly upper triangle is stored, row-major; the lower triangle
// is derived as 1 - p_ij so the embedded tables are exactly symmetric.

constexpr std::array<double, 10> kMslrUpper = {
    0.535, 0.613, 0.757, 0.765,
           0.580, 0.727, 0.738,
                  0.659, 0.669,
                         0.510,
};

constexpr std::array<double, 6> kCyclicUpper = {
    0.6, 0.6, 0.6,
         0.6, 0.4,
              0.6,
};

constexpr std::array<double, 120> kSushiUpper = {
    0.512, 0.622, 0.655, 0.698, 0.726, 0.711, 0.708, 0.749, 0.8, 0.741, 0.783, 0.847, 0.817, 0.854, 0.868,
    0.602, 0.683, 0.652, 0.776, 0.663, 0.683, 0.738, 0.709, 0.786, 0.802, 0.83, 0.85, 0.871, 0.873,
    0.528, 0.554, 0.533, 0.534, 0.591, 0.573, 0.593, 0.661, 0.705, 0.734, 0.672, 0.787, 0.822,
    0.553, 0.619, 0.566, 0.641, 0.675, 0.687, 0.665, 0.696, 0.803, 0.823, 0.796, 0.844,
    0.513, 0.524, 0.518, 0.608, 0.538, 0.643, 0.61, 0.695, 0.672, 0.681, 0.775,
    0.513, 0.559, 0.575, 0.621, 0.591, 0.701, 0.702, 0.787, 0.829, 0.811,
    0.559, 0.553, 0.613, 0.564, 0.607, 0.703, 0.735, 0.736, 0.801,
    0.556, 0.527, 0.562, 0.58, 0.668, 0.805, 0.777, 0.767,
    0.512, 0.548, 0.542, 0.612, 0.786, 0.71, 0.685,
    0.543, 0.579, 0.613, 0.718, 0.685, 0.747,
    0.564, 0.625, 0.618, 0.702, 0.684,
    0.542, 0.644, 0.7, 0.733,
    0.577, 0.607, 0.596,
    0.578, 0.637,
    0.586,
};

struct Entry {
    std::string_view name;
    std::size_t arms;
    std::span<const double> upper;
    std::string_view description;
};

const std::array<Entry, 3>& registry() {
    static const std::array<Entry, 3> entries = {{
        {"mslr", 5, kMslrUpper, "5 rankers, total order, p = 0.51"},
        {"sushi", 16, kSushiUpper, "16 sushi types, total order, p = 0.512"},
        {"cyclic", 4, kCyclicUpper, "4 arms, Condorcet winner 1, arms 2,3,4 form a cycle"},
    }};
    return entries;
}

const Entry& lookup(std::string_view name) {
    for (const auto& e : registry()) {
        if (e.name == name) return e;
    }
    std::string msg = "unknown dataset '" + std::string(name) + "'; available:";
    for (const auto& e : registry()) {
        msg += " ";
        msg += e.name;
    }
    throw std::invalid_argument(msg);
}

}  // namespace

PreferenceMatrix dataset(std::string_view name) {
    const auto& e = lookup(name);
    return PreferenceMatrix::from_upper_triangle(e.arms, e.upper);
}

std::vector<std::string> dataset_names() {
    std::vector<std::string> names;
    for (const auto& e : registry()) names.emplace_back(e.name);
    return names;
}

std::string dataset_description(std::string_view name) { return std::string(lookup(name).description); }

}  // namespace duelbench
