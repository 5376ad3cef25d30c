// Lists every critical pair (A, A) inside {0..7} and shows the structural
// case the predictor assigns to it.

#include <iostream>

#include "ehinv/ehinv.hpp"

int main() {
    using namespace ehinv;
    for (bits::Mask m = 1; m < (1U << 8); ++m) {
        if (bits::count(m) < 2) continue;
        const IntSet a(verify::mask_elements(m));
        if (!is_critical_pair(a, a)) continue;
        std::cout << to_string(a) << "  |A+^A| = " << restricted_sumset(a, a).size() << "  "
                  << describe(predict_critical(a, a)) << '\n';
    }
}
