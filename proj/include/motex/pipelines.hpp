#pragma once

#include "motex/ahss.hpp"

#include <memory>

namespace motex {

/* The Adams-side computation of a theory over a base: the BC2 module over
 * the matching subalgebra, its resolution, and the Ext chart. */
struct AdamsSide {
    std::shared_ptr<const AlgebraTable> algebra;
    std::unique_ptr<PresentedModule> module;
    std::unique_ptr<Resolution> resolution;
    ExtChart chart;
};

/* the cohomology of BC2 as a module over the subalgebra for the theory */
PresentedModule bc2_module(Theory theory, const BaseRing& base, int truncation,
                           std::shared_ptr<const AlgebraTable>* out_alg = nullptr);

/* resolve and take Ext on the given window; max_t is chosen from the window
 * via the certified-depth rule of the base */
AdamsSide adams_bc2(Theory theory, FieldTag tag, int q, const ExtWindow& window, int threads = 0);

/* Ext of the coefficients (trivial module) over the theory's subalgebra */
AdamsSide adams_coefficients(Theory theory, FieldTag tag, int q, const ExtWindow& window,
                             int threads = 0);

/* the max_t needed so that every cell of the window is certified */
int required_max_t(FieldTag tag, const ExtWindow& window);

/* assembled homotopy table of the BC2 computation (no hidden extensions on
 * the BC2 side: the Adams spectral sequences here collapse and multiplication
 * by 2 is the chain-level h0 action) */
AbelianTable assemble_bc2(Theory theory, FieldTag tag, int q, const ExtWindow& window);

} // namespace motex
