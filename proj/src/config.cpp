#include "argvar/config.hpp"

#include <cstdlib>
#include <string>

namespace argvar {

int max_refine_depth() {
    static const int depth = [] {
        if (const char* s = std::getenv("ARGVAR_MAX_REFINE")) {
            try {
                int v = std::stoi(s);
                if (v >= 1 && v <= 40) return v;
            } catch (...) {
            }
        }
        return 12;
    }();
    return depth;
}

}  // namespace argvar
