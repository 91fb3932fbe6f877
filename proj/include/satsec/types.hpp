#pragma once

#include <complex>
#include <vector>

namespace satsec {

using cx = std::complex<double>;
using CVec = std::vector<cx>;

}  // namespace satsec
