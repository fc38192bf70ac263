#include "tdiff/errors.hpp"
#include "tdiff/lp.hpp"

namespace tdiff {

std::size_t LpModel::add_variable(double lower, double upper, double cost) {
  if (lower > upper) throw BadParameters("variable lower bound exceeds upper bound");
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(cost);
  return cost_.size() - 1;
}

std::size_t LpModel::add_row(LpRow row) {
  if (row.lower > row.upper) throw BadParameters("row lower bound exceeds upper bound");
  for (const auto& t : row.terms)
    if (t.var >= cost_.size()) throw BadParameters("row references unknown variable");
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

void LpModel::set_bounds(std::size_t j, double lower, double upper) {
  if (lower > upper) throw BadParameters("variable lower bound exceeds upper bound");
  lower_.at(j) = lower;
  upper_.at(j) = upper;
}

}  // namespace tdiff
