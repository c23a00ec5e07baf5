#include "h2lat/matrix.hpp"

namespace h2lat {

IntMatrix::IntMatrix(Model model, std::vector<Integer> row_major)
    : model_(model), dim_(model.rank()), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_)
    throw LatticeError("matrix must have " + std::to_string(dim_ * dim_) + " entries for " + model_.to_string());
}

IntMatrix IntMatrix::identity(const Model& model) {
  std::size_t d = model.rank();
  std::vector<Integer> data(d * d);
  for (std::size_t i = 0; i < d; ++i) data[i * d + i] = 1;
  return IntMatrix(model, std::move(data));
}

IntMatrix IntMatrix::from_columns(const std::vector<HomClass>& columns) {
  if (columns.empty()) throw LatticeError("no columns");
  const Model& m = columns.front().model();
  std::size_t d = m.rank();
  if (columns.size() != d) throw LatticeError("wrong number of columns");
  std::vector<Integer> data(d * d);
  for (std::size_t c = 0; c < d; ++c) {
    require_same_model(m, columns[c].model());
    for (std::size_t r = 0; r < d; ++r) data[r * d + c] = columns[c][r];
  }
  return IntMatrix(m, std::move(data));
}

IntMatrix IntMatrix::reflection(const HomClass& gamma) {
  const Model& m = gamma.model();
  std::vector<HomClass> cols;
  cols.reserve(m.rank());
  for (std::size_t j = 0; j < m.rank(); ++j) cols.push_back(reflect(gamma, unit(m, j)));
  return from_columns(cols);
}

HomClass IntMatrix::apply(const HomClass& x) const {
  require_same_model(model_, x.model());
  HomClass out = HomClass::zero(model_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < dim_; ++c) acc += at(r, c) * x[c];
    out[r] = acc;
  }
  return out;
}

FormClass IntMatrix::apply(const FormClass& x) const {
  require_same_model(model_, x.model());
  FormClass out = FormClass::zero(model_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < dim_; ++c) acc += Rational(at(r, c)) * x[c];
    out[r] = acc;
  }
  return out;
}

HomClass IntMatrix::column(std::size_t c) const {
  HomClass out = HomClass::zero(model_);
  for (std::size_t r = 0; r < dim_; ++r) out[r] = at(r, c);
  return out;
}

bool IntMatrix::is_identity() const { return *this == identity(model_); }

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_model(a.model_, b.model_);
  std::size_t d = a.dim_;
  std::vector<Integer> data(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) {
      const Integer& ark = a.at(r, k);
      if (ark == 0) continue;
      for (std::size_t c = 0; c < d; ++c) data[r * d + c] += ark * b.at(k, c);
    }
  return IntMatrix(a.model_, std::move(data));
}

}  // namespace h2lat
