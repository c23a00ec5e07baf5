#pragma once

#include "h2lat/lattice.hpp"

#include <vector>

namespace h2lat {

/// Square integer matrix acting on coefficient vectors from the left: column j
/// is the image of the j-th standard basis vector.
class IntMatrix {
 public:
  IntMatrix(Model model, std::vector<Integer> row_major);
  static IntMatrix identity(const Model& model);
  /// Matrix of R(gamma).
  static IntMatrix reflection(const HomClass& gamma);
  /// Matrix whose columns are the given images of the basis vectors.
  static IntMatrix from_columns(const std::vector<HomClass>& columns);

  const Model& model() const { return model_; }
  std::size_t dim() const { return dim_; }
  const Integer& at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const std::vector<Integer>& row_major() const { return data_; }

  HomClass apply(const HomClass& x) const;
  FormClass apply(const FormClass& x) const;
  HomClass column(std::size_t c) const;
  bool is_identity() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.model_ == b.model_ && a.data_ == b.data_;
  }

 private:
  Model model_;
  std::size_t dim_;
  std::vector<Integer> data_;
};

}  // namespace h2lat
