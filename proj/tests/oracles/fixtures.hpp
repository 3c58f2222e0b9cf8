#pragma once

// Reference values produced by tests/oracles/stats_fixtures.py (scipy.stats).
// Nothing here is computed by the library under test.

#include <array>
#include <vector>

namespace oracle {

struct StatsFixture {
  std::vector<double> a;
  std::vector<double> b;
  double half_width_a;  // 95% t half-width of a
  double diff_mean;
  double diff_low;
  double diff_high;
  double var_ratio;
  double ratio_low;
  double ratio_high;
  bool means_reject;
  bool variances_reject;
};

inline const std::vector<StatsFixture>& stats_fixtures() {
  static const std::vector<StatsFixture> f = {
      {{1, 2, 3}, {2, 4, 6},
       2.484137712, -2, -4.484137712, 0.4841377117, 0.25, 0.00641025641, 9.75, false, false},
      {{5, 7, 6, 9, 8}, {4, 7.5, 5, 8, 9.5},
       1.963243161, 0.2, -1.229262595, 1.629262595, 0.4926108374, 0.05128942732, 4.73129551, false, false},
      {{10.1, 9.8, 10.4, 10.0, 9.7, 10.3}, {10.0, 9.9, 10.1, 10.2, 9.6, 10.4},
       0.2873997863, 0.01666666667, -0.1758888071, 0.2092221404, 1.004464286, 0.140555642, 7.178285319, false, false},
      {{149210, 151032.5, 153877.25, 156004, 150500.75, 152250},
       {149100, 151500, 153000, 156900, 150100, 152600},
       2590.173499, -54.25, -729.2389761, 620.7389761, 0.8144126203, 0.1139615318, 5.820103551, false, false},
      {{0.5, 1.5, 2.5, 3.5}, {0.25, 1.0, 2.75, 3.0},
       2.054260257, 0.25, -0.3125823408, 0.8125823408, 0.9302325581, 0.06025141328, 14.36203012, false, false},
      {{-3.2, -1.1, 0.4, 2.2, 4.8, 5.1, 6.6}, {-2.0, -1.5, 1.4, 2.0, 3.8, 6.1, 7.0},
       3.32962819, -0.2857142857, -1.062123203, 0.4906946315, 1.072078459, 0.1842136255, 6.239235666, false, false},
      {{100, 102, 98, 101, 99, 103, 97, 100}, {90, 95, 85, 100, 80, 105, 75, 110},
       1.672041843, 7.5, -1.537426489, 16.53742649, 0.02666666667, 0.005338769034, 0.1331975792, false, true},
      {{2, 2, 2, 2.5}, {1, 3, 2, 4},
       0.3978057882, -0.375, -2.139153929, 1.389153929, 0.0375, 0.002428885098, 0.5789693392, false, true},
      {{11.5, 12.25, 13, 12, 11.75, 12.5, 13.25, 12.75, 11, 12},
       {11, 12.5, 12.75, 12.25, 11.5, 12, 13.5, 12.5, 11.25, 12.25},
       0.4973317066, 0.05, -0.1854527826, 0.2854527826, 0.8656716418, 0.2150205906, 3.485188973, false, false},
      {{1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2}, {1.5e-3, 2.5e-3, 3.5e-3, 9e-3, 1.2e-2},
       0.007573132563, 0.0005, -0.002021831502, 0.003021831502, 1.786314526, 0.1859866695, 17.15671125, false, false},
  };
  return f;
}

struct TRow {
  double df, q975, q995;
};
inline constexpr std::array<TRow, 7> kStudentT = {{
    {1, 12.70620474, 63.65674116},
    {2, 4.30265273, 9.924843201},
    {5, 2.570581836, 4.032142984},
    {10, 2.228138852, 3.169272673},
    {30, 2.042272456, 2.749995654},
    {100, 1.983971518, 2.625890521},
    {499, 1.964729391, 2.585717683},
}};

struct FRow {
  double d1, d2, q975, q95;
};
inline constexpr std::array<FRow, 9> kFisherF = {{
    {1, 1, 647.7890115, 161.4476388},
    {2, 2, 39, 19},
    {5, 10, 4.236085668, 3.32583453},
    {10, 5, 6.619154331, 4.73506307},
    {30, 30, 2.07394375, 1.840871689},
    {100, 100, 1.48325099, 1.391719552},
    {499, 499, 1.192057402, 1.158826595},
    {2, 30, 4.182060591, 3.315829501},
    {10, 499, 2.07406105, 1.849675313},
}};

inline constexpr double kZ975 = 1.95996398454;
inline constexpr double kChi2_99_df99 = 134.6416169;
inline constexpr double kKsCritical_01_1e5 = 0.005146997786;  // asymptotic Kolmogorov
inline constexpr unsigned long long kExpectedReps_sd1000_t05 = 15'365'836;

}  // namespace oracle
