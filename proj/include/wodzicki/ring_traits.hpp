#ifndef WODZICKI_RING_TRAITS_HPP_
#define WODZICKI_RING_TRAITS_HPP_

/* Uniform construction of ring constants.  Coefficient rings of Clifford
 * elements differ in whether they carry the torus dimension (TrigPoly does,
 * GaussianRational and TensorPoly do not), so zero/scalar go through a
 * trait parametrized by that dimension.
 */

#include "wodzicki/rational.hpp"

namespace wodzicki {

template <class R>
struct RingTraits {
  static R zero(int) { return R(); }
  static R scalar(int, GaussianRational z) { return R(std::move(z)); }
};

} // namespace wodzicki

#endif // WODZICKI_RING_TRAITS_HPP_
