#pragma once

namespace argvar {

/// Maximum refinement-doubling depth for adaptive samplers; default 12,
/// overridable through the ARGVAR_MAX_REFINE environment variable.
int max_refine_depth();

}  // namespace argvar
