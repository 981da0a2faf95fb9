#pragma once

#include <string>
#include <vector>

namespace testgen {

/// Family expressions covering both input syntaxes.
inline const std::vector<std::string> kFamilies = {
    "z^2 + t",
    "z^2 - 1",
    "(z^2 - t)^2 / (4*z*(z-1)*(z-t))",
    "z^3 + t*z + 1",
    "t*z^2 + z",
    "(z^2 + t) / (z + 1)",
    "1/(z^2 + t)",
    "(t^2 - 1)*z^2 + 3*z - t^3",
    "z^2/2 + t/3",
    "(z - t)^3 / (z^2 - 1)",
    "z^4 - 2*t*z^2 + t^2",
    "(2*z + 1)^2 / (t*z^2 + 1)",
    "-z^2 + t*z - 7",
    "(z^3 - t) / (z*(z - 2))",
    "[1, 0, t]; [0, 0, 1]",
    "[t, 1, 0]; [1, 0, t^2]",
    "z^5 + t^4",
    "(z^2 + z + 1)/(z^2 - z + t)",
    "((z+1)^2 - t)/(3*z)",
    "z*(z + t)*(z - t) / (z^2 + 1)",
    "(z^2 + t)^1 / 1",
    "z^2 + (t - 1)/(t + 1)",
};

}  // namespace testgen
