#include "mrpca/trace.hpp"

#include <cstdio>
#include <stdexcept>

#include "mrpca/errors.hpp"

namespace mrpca {

void SolverTrace::write_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open trace file for writing: " + path);

    std::fputs("iter,objective,gap,dL,dW,dU,lagrangian", f);
    if (extended) std::fputs(",gap_z,e_frac", f);
    std::fputc('\n', f);

    for (std::size_t r = 0; r < iter.size(); ++r) {
        std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", iter[r], objective[r], gap[r],
                     dL[r], dW[r], dU[r], lagrangian[r]);
        if (extended) std::fprintf(f, ",%.17g,%.17g", gap_z[r], e_frac[r]);
        std::fputc('\n', f);
    }
    if (std::fclose(f) != 0) throw IoError("failed writing trace file: " + path);
}

}  // namespace mrpca
