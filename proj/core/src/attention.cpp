#include "ppgkit/attention.hpp"

#include <cmath>

namespace ppgkit {

Matrix scaled_cosine_attention(const Matrix& queries, const Matrix& keys, double tau,
                               const Matrix& bias) {
    if (queries.cols != keys.cols || queries.cols == 0)
        throw BadConfig("scaled_cosine_attention: query/key width mismatch");
    if (!(tau > 0.0))
        throw BadConfig("scaled_cosine_attention: tau must be positive");
    if (bias.rows != queries.rows || bias.cols != keys.rows)
        throw BadConfig("scaled_cosine_attention: bias shape mismatch");
    const std::size_t d = queries.cols;
    auto row_norm = [d](const Matrix& m, std::size_t i) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += m.at(i, k) * m.at(i, k);
        return std::sqrt(s);
    };
    std::vector<double> qn(queries.rows), kn(keys.rows);
    for (std::size_t i = 0; i < queries.rows; ++i) {
        qn[i] = row_norm(queries, i);
        if (qn[i] == 0.0) throw ZeroVector("scaled_cosine_attention: zero query row");
    }
    for (std::size_t j = 0; j < keys.rows; ++j) {
        kn[j] = row_norm(keys, j);
        if (kn[j] == 0.0) throw ZeroVector("scaled_cosine_attention: zero key row");
    }
    Matrix s(queries.rows, keys.rows);
    for (std::size_t i = 0; i < queries.rows; ++i) {
        for (std::size_t j = 0; j < keys.rows; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += queries.at(i, k) * keys.at(j, k);
            s.at(i, j) = dot / (qn[i] * kn[j] * tau) + bias.at(i, j);
        }
    }
    return s;
}

} // namespace ppgkit
