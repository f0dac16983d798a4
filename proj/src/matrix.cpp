#include "cryscreen/matrix.hpp"

#include "cryscreen/error.hpp"

namespace cryscreen {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(0, rows.empty() ? 0 : rows.front().size());
    for (const auto& r : rows) m.append_row(r);
    return m;
}

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && data_.empty()) cols_ = values.size();
    if (values.size() != cols_) {
        throw Error(ErrorKind::Configuration, "row length does not match matrix width");
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

}  // namespace cryscreen
