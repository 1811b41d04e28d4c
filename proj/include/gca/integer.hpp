#pragma once

// Arbitrary-precision integers and rationals. Expression templates are off so
// that `auto` and the conditional operator behave like ordinary values.

#include <boost/multiprecision/cpp_int.hpp>

namespace gca {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

}  // namespace gca
