#include "sns/errors.hpp"

#include <sstream>

namespace sns {

SamplerError::SamplerError(std::string what) : std::runtime_error(what), base_(std::move(what)) {
  rebuild();
}

void SamplerError::set_iteration(std::size_t it) {
  iteration_ = it;
  rebuild();
}

void SamplerError::set_subset(std::size_t s) {
  subset_ = s;
  rebuild();
}

void SamplerError::rebuild() {
  std::ostringstream os;
  if (iteration_) os << "iteration " << *iteration_ << ": ";
  if (subset_) os << "subset " << *subset_ << ": ";
  os << base_;
  full_ = os.str();
}

namespace {

std::string not_negdef_message(std::size_t pivot, double value) {
  std::ostringstream os;
  os << "Hessian is not negative-definite: Cholesky of -H failed at pivot " << pivot
     << " (value " << value << ")";
  return os.str();
}

std::string line_search_message(double f_old, double f_last, int halvings) {
  std::ostringstream os;
  os.precision(17);
  os << "line search failed after " << halvings << " halvings: f_old=" << f_old
     << ", f_last=" << f_last;
  return os.str();
}

std::string overflow_message(double u) {
  std::ostringstream os;
  os << "exp(u) overflow in base model: |u| = " << u << " exceeds 700";
  return os.str();
}

}  // namespace

NotNegativeDefinite::NotNegativeDefinite(std::size_t pivot, double value)
    : SamplerError(not_negdef_message(pivot, value)), pivot_(pivot), value_(value) {}

LineSearchFailure::LineSearchFailure(double f_old, double f_last, int halvings)
    : SamplerError(line_search_message(f_old, f_last, halvings)), f_old_(f_old), f_last_(f_last) {}

OverflowError::OverflowError(double u) : std::overflow_error(overflow_message(u)), u_(u) {}

}  // namespace sns
