#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aidrin {

/// Dense row-major real matrix fed to the learner.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(std::size_t rows, std::vector<std::string> column_names)
      : rows_(rows), names_(std::move(column_names)), data_(rows_ * names_.size(), 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols(), cols()};
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::string> names_;
  std::vector<double> data_;
};

/// Maps design-matrix columns back to the source features they encode, so
/// one-hot indicator blocks are attributed as a unit.
struct FeatureGroups {
  std::vector<std::string> names;          // one per source feature
  std::vector<std::size_t> column_group;   // design column -> index into names

  std::size_t size() const { return names.size(); }
  /// Identity grouping: one feature per design column.
  static FeatureGroups identity(const std::vector<std::string>& columns);
};

/// Anything that maps a design-matrix row to a real prediction.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual double predict(std::span<const double> row) const = 0;
};

}  // namespace aidrin
