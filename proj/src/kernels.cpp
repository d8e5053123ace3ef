// Single home of the decomposition instantiations when HPH_SEPARATE_KERNELS is used.
#define HPH_KERNELS_IMPL
#include "hph/detail/kernels.hpp"
