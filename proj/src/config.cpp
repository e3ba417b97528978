#include "gdalab/config.hpp"

namespace gdalab {

const Tolerances& tolerances() {
  static const Tolerances kTolerances{};
  return kTolerances;
}

}  // namespace gdalab
