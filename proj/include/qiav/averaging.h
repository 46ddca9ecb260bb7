#pragma once

#include "space.h"

namespace qiav
{

/// Dof averaging: the coefficient of global dof a is the arithmetic mean of
/// the local dofs (K, i) in its class, read directly from the broken field.
ConformingField average(const BrokenField& v);

/// As average(), restricted to interior dofs; boundary coefficients are exactly 0.
ConformingField average_zero_bc(const BrokenField& v);

} // namespace qiav
