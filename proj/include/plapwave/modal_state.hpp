#pragma once

#include <vector>

namespace plapwave {

// Time plus coefficient and velocity vectors of the modal expansion.
struct ModalState {
    double t = 0.0;
    std::vector<double> c;
    std::vector<double> v;
};

}  // namespace plapwave
