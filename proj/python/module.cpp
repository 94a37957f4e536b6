#include <pybind11/pybind11.h>

namespace py = pybind11;

PYBIND11_MODULE(fancross, m) {
    m.doc() = "fan-crossing embedding toolkit";
    m.attr("__version__") = "0.1.0";
}
