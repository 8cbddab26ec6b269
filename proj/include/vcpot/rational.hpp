#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace vcpot {

// Exact coefficient type for all symbolic computations. Floating point is
// confined to the quadrature / mesh / recovery layers.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
    return r.str();
}

inline double rat_to_double(const Rat& r) {
    return static_cast<double>(r);
}

} // namespace vcpot
