#include "qiav/averaging.h"

namespace qiav
{

namespace
{
double class_mean(const BrokenField& v, const std::vector<LocalDof>& cls)
{
  double sum = 0.0;
  for (const LocalDof& d : cls)
    sum += v(d.cell, d.local);
  return sum / double(cls.size());
}
} // namespace

ConformingField average(const BrokenField& v)
{
  ConformingField out(v.space_ptr());
  const Connectivity& conn = v.space().connectivity();
  for (std::size_t a = 0; a < conn.num_global(); ++a)
    out[a] = class_mean(v, conn.dof_class(a));
  return out;
}

ConformingField average_zero_bc(const BrokenField& v)
{
  ConformingField out(v.space_ptr());
  const Connectivity& conn = v.space().connectivity();
  for (std::size_t a : conn.interior_dofs())
    out[a] = class_mean(v, conn.dof_class(a));
  return out;
}

} // namespace qiav
