#include "eedqn/buffers/diff_buffer.hpp"

#include <cmath>
#include <string>

#include "eedqn/error.hpp"

namespace eedqn::buffers {

void DiffBuffer::CompensatedSum::add(double x) noexcept {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    carry += (sum - t) + x;
  } else {
    carry += (x - t) + sum;
  }
  sum = t;
}

DiffBuffer::DiffBuffer(std::size_t capacity, StdConvention convention)
    : capacity_(capacity), convention_(convention) {
  if (capacity == 0) throw ConfigError("diff buffer capacity must be positive");
  values_.reserve(capacity);
}

void DiffBuffer::push(double z) {
  if (!std::isfinite(z) || z < 0.0) {
    throw NumericError("diff buffer: state-value difference must be finite and >= 0, got " +
                       std::to_string(z));
  }
  if (values_.empty()) {
    shift_ = z;
    sum_ = {};
    sum_sq_ = {};
  }
  const double d = z - shift_;
  if (values_.size() < capacity_) {
    values_.push_back(z);
  } else {
    const double old = values_[head_] - shift_;
    values_[head_] = z;
    head_ = (head_ + 1) % capacity_;
    sum_.add(-old);
    sum_sq_.add(-old * old);
    ++evictions_since_sync_;
  }
  sum_.add(d);
  sum_sq_.add(d * d);
  if (evictions_since_sync_ >= capacity_) resync();
}

double DiffBuffer::push_and_threshold(double z) {
  push(z);
  return threshold();
}

void DiffBuffer::resync() {
  evictions_since_sync_ = 0;
  shift_ = values_[head_];
  sum_ = {};
  sum_sq_ = {};
  for (double v : values_) {
    const double d = v - shift_;
    sum_.add(d);
    sum_sq_.add(d * d);
  }
}

double DiffBuffer::mean() const noexcept {
  if (values_.empty()) return 0.0;
  return shift_ + sum_.value() / static_cast<double>(values_.size());
}

double DiffBuffer::stddev() const noexcept {
  const auto n = static_cast<double>(values_.size());
  if (values_.size() < 2) return 0.0;
  const double m = sum_.value() / n;
  double var = sum_sq_.value() / n - m * m;
  if (var < 0.0) var = 0.0;
  if (convention_ == StdConvention::sample) var *= n / (n - 1.0);
  return std::sqrt(var);
}

double DiffBuffer::threshold() const noexcept {
  if (values_.empty()) return 0.0;
  return mean() + stddev() / std::sqrt(static_cast<double>(values_.size()));
}

std::vector<double> DiffBuffer::contents() const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.push_back(values_[(head_ + i) % values_.size()]);
  }
  return out;
}

}  // namespace eedqn::buffers
