#pragma once

#include <string>
#include <utility>
#include <vector>

#include "partition.hpp"

namespace weingarten {

/// Orthogonal Weingarten values for n <= 4 as published (unreduced where the
/// source leaves common factors in place).
inline const std::vector<std::pair<Partition, std::string>>& published_orthogonal_table() {
    static const std::vector<std::pair<Partition, std::string>> table{
        {{1}, "d^-1"},
        {{1, 1}, "(d+1)/(d(d-1)(d+2))"},
        {{2}, "-1/(d(d-1)(d+2))"},
        {{1, 1, 1}, "(d^2+3d-2)/(d(d-1)(d-2)(d+2)(d+4))"},
        {{2, 1}, "-1/(d(d-1)(d-2)(d+4))"},
        {{3}, "2/(d(d-1)(d-2)(d+2)(d+4))"},
        {{4}, "(-5d-6)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"},
        {{3, 1}, "(2d+8)/((d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"},
        {{2, 2}, "(d^2+5d+18)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"},
        {{2, 1, 1}, "(-d^3-6d^2-3d+6)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"},
        {{1, 1, 1, 1}, "(d^4+7d^3+d^2-35d-6)/(d(d+1)(d+2)(d+4)(d+6)(d-1)(d-2)(d-3))"},
    };
    return table;
}

} // namespace weingarten
