#pragma once

// Reference values computed offline, independently of the library.
//
// Coverage profiles: exact-in-y integration of the coverage count over the
// 60 m unit cell (interval arithmetic per x, 400000 x midpoints).
// Zipf: 40-digit arbitrary precision summation.

#include <array>

namespace hetcache::oracle {

struct FrozenGamma {
  double radius;
  std::array<double, 4> gamma;
};

inline constexpr double kSpacing = 60.0;

inline constexpr std::array<FrozenGamma, 5> kFrozenGamma{{
    {60.0 * 0.7072, {0.4287951931110303, 0.5711991330191609, 5.639113264481547e-06, 3.475654426675801e-08}},
    {45.0, {0.2903803962614619, 0.6593179910370713, 0.043076960318116114, 0.007224652383350792}},
    {50.0, {0.12000493776044646, 0.6391537131163794, 0.1800161974461837, 0.06082515167699065}},
    {55.0, {0.02868410138741726, 0.46691069802338825, 0.3403158046519569, 0.1640893959372375}},
    {60.0, {0.0, 0.17355408867706507, 0.5112991676945747, 0.31514674362836026}},
}};

inline constexpr double kZipf200Exp07First = 0.07368415812143838084;
inline constexpr double kZipf200Exp07Last = 0.0018057313118394923343;

}  // namespace hetcache::oracle
