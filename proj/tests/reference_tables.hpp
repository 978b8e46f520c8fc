// Copyright 2026 The ICSCM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Contingency tables with statistics frozen from scipy 1.15
// (chi2_contingency, correction=False; lambda_="log-likelihood" for G).

#pragma once

#include <cstdint>
#include <vector>

namespace reference {

struct Table {
  std::size_t cols;  // rows are always 2
  std::vector<std::uint64_t> counts;
  double chi2;
  double g;
  std::size_t dof;
  double chi2_p;
  double g_p;
};

inline const std::vector<Table>& tables() {
  static const std::vector<Table> t = {
    {2, {40,10,10,40}, 36, 38.5489514044, 1, 1.97317529008e-09, 5.33974505243e-10},
    {2, {25,25,25,25}, 0, 0, 1, 1, 1},
    {2, {12,7,3,18}, 10.1654135338, 10.6919941579, 1, 0.00143099814486, 0.00107600157437},
    {3, {100,150,90,80,120,200}, 42.6955149876, 43.4839509244, 2, 5.35533594167e-10, 3.61060543114e-10},
    {4, {1,2,3,4,4,3,2,1}, 4, 4.25760541145, 3, 0.261464129949, 0.234957402173},
    {2, {500,480,520,530}, 0.454151297483, 0.454169854934, 1, 0.500370133537, 0.500361379589},
    {2, {9,1,1,9}, 12.8, 14.7225682867, 1, 0.000346619351135, 0.000124546519222},
    {2, {30,0,0,30}, 60, 83.1776616672, 1, 9.48573757107e-15, 7.50004772216e-20},
    {3, {77,242,91,273,248,213}, 72.8773798441, 73.7783480358, 2, 1.49581553412e-16, 9.53312487825e-17},
    {3, {17,227,242,197,85,32}, 356.47713496, 390.041762363, 2, 3.90817210939e-78, 2.01144168814e-85},
    {5, {87,216,149,105,135,21,58,60,45,93}, 28.5880519309, 28.2916536577, 4, 9.47774941785e-06, 1.08852511373e-05},
    {4, {150,61,259,117,298,256,76,293}, 283.642526988, 287.108616995, 3, 3.44871018464e-61, 6.13230808375e-62},
    {4, {126,163,122,293,246,178,61,188}, 81.9674816759, 83.2069983077, 3, 1.16132298107e-17, 6.2947477768e-18},
    {3, {129,147,161,157,100,116}, 14.0258202754, 14.0246459178, 2, 0.00090018511027, 0.000900713835092},
    {4, {40,49,238,63,269,100,47,144}, 326.914982352, 349.902220976, 3, 1.48522910448e-70, 1.56620077277e-75},
    {3, {105,201,101,24,234,49}, 58.5331458268, 61.7390306845, 2, 1.94844826746e-13, 3.92229114832e-14},
    {5, {207,84,78,277,210,66,70,11,90,56}, 43.5727162854, 41.2843301551, 4, 7.87009177741e-09, 2.34704987025e-08},
    {2, {216,265,127,112}, 4.33722276932, 4.33624256075, 1, 0.0372876990194, 0.0373091742437},
    {4, {290,163,65,232,46,94,274,237}, 319.219847123, 347.858695221, 3, 6.88065996061e-69, 4.33839134671e-75},
    {5, {194,20,10,58,294,144,285,80,235,283}, 295.743713201, 330.79042401, 4, 8.97183450941e-63, 2.45987431804e-70},
  };
  return t;
}

}  // namespace reference
