#include <pybind11/pybind11.h>

#include "qcrit/version.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "quantum-critical entanglement toolkit core";
  m.attr("__version__") = qcrit::kVersion;
}
