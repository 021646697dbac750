#pragma once

// Reference values for the built-in 5-vertex example (vertices 0-based).

#include <string>
#include <utility>
#include <vector>

#include "qtda/complex.hpp"

namespace qtda::cli {

// Triangle {0,1,2} plus the hollow triangle 2-3-4.
inline SimplicialComplex worked_example_complex() {
  return complex_from_simplices(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {0, 1, 2}});
}

inline const std::vector<std::vector<long>> kGoldenBoundary1 = {
    {1, 1, 0, 0, 0, 0},
    {-1, 0, 1, 0, 0, 0},
    {0, -1, -1, 1, 1, 0},
    {0, 0, 0, -1, 0, 1},
    {0, 0, 0, 0, -1, -1},
};

inline const std::vector<std::vector<long>> kGoldenBoundary2 = {{1}, {-1}, {1}, {0}, {0}, {0}};

inline const std::vector<std::vector<long>> kGoldenLaplacian1 = {
    {3, 0, 0, 0, 0, 0},
    {0, 3, 0, -1, -1, 0},
    {0, 0, 3, -1, -1, 0},
    {0, -1, -1, 2, 1, -1},
    {0, -1, -1, 1, 2, 1},
    {0, 0, 0, -1, 1, 2},
};

inline const std::vector<std::vector<long>> kGoldenPadded1 = {
    {3, 0, 0, 0, 0, 0, 0, 0},
    {0, 3, 0, -1, -1, 0, 0, 0},
    {0, 0, 3, -1, -1, 0, 0, 0},
    {0, -1, -1, 2, 1, -1, 0, 0},
    {0, -1, -1, 1, 2, 1, 0, 0},
    {0, 0, 0, -1, 1, 2, 0, 0},
    {0, 0, 0, 0, 0, 0, 3, 0},
    {0, 0, 0, 0, 0, 0, 0, 3},
};

inline constexpr double kGoldenLambdaMax = 6.0;
inline constexpr int kGoldenBeta1 = 1;

inline const std::vector<std::pair<std::string, double>> kGoldenPauliTerms = {
    {"XXI", -0.5},   {"YYI", -0.5},   {"ZIX", -0.5},   {"IXI", -0.25},  {"XIX", -0.25},
    {"XYY", -0.25},  {"XZX", -0.25},  {"YIY", -0.25},  {"YZY", -0.25},  {"ZXI", -0.25},
    {"IZI", -0.125}, {"IZZ", -0.125}, {"ZZZ", -0.125}, {"IIZ", 0.125},  {"ZII", 0.125},
    {"ZIZ", 0.125},  {"IXZ", 0.25},   {"XXX", 0.25},   {"YXY", 0.25},   {"YYX", 0.25},
    {"ZXZ", 0.25},   {"ZZI", 0.375},  {"IZX", 0.5},    {"III", 2.625},
};

}  // namespace qtda::cli
