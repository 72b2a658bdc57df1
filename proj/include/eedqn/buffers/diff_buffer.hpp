#pragma once

#include <cstddef>
#include <vector>

namespace eedqn::buffers {

enum class StdConvention { population, sample };

/// Bounded history of state-value differences z >= 0 with O(1) mean and
/// standard deviation, driving the elastic-step threshold
///   h = mean(B) + std(B) / sqrt(|B|).
///
/// Sums are kept relative to a reference value (the oldest element at the
/// last resync) with compensated addition, and rebuilt from the contents
/// every `capacity` evictions. A constant stream therefore yields exactly
/// mean == z and std == 0.
class DiffBuffer {
 public:
  explicit DiffBuffer(std::size_t capacity,
                      StdConvention convention = StdConvention::population);

  /// Appends z, evicting the oldest entry when full. Throws NumericError for
  /// non-finite or negative z.
  void push(double z);
  /// Appends z, then returns the threshold over the buffer including z.
  double push_and_threshold(double z);

  double mean() const noexcept;
  /// Standard deviation under the configured convention; 0 for fewer than
  /// two elements.
  double stddev() const noexcept;
  /// mean + stddev / sqrt(size); 0 when empty.
  double threshold() const noexcept;

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  StdConvention convention() const noexcept { return convention_; }
  /// Contents from oldest to newest.
  std::vector<double> contents() const;

 private:
  struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) noexcept;
    double value() const noexcept { return sum + carry; }
  };

  void resync();

  std::size_t capacity_;
  StdConvention convention_;
  std::vector<double> values_;
  std::size_t head_ = 0;
  std::size_t evictions_since_sync_ = 0;
  double shift_ = 0.0;
  CompensatedSum sum_;
  CompensatedSum sum_sq_;
};

/// Free-function form used by the training loop.
inline double push_diff_and_threshold(DiffBuffer& buffer, double z) {
  return buffer.push_and_threshold(z);
}

}  // namespace eedqn::buffers
