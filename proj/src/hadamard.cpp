#include "antilearn/hadamard.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace antilearn {

HadamardMatrix sylvester_hadamard(unsigned k, std::size_t order_cap) {
    if (k >= 63 || (std::size_t{1} << k) > order_cap)
        throw std::length_error("hadamard order 2^" + std::to_string(k) +
                                " exceeds the cap of " + std::to_string(order_cap));
    const std::size_t n = std::size_t{1} << k;

    HadamardMatrix m;
    m.order = n;
    m.cells.assign(n * n, 1);
    // H_{2s} = [[H_s, H_s], [H_s, -H_s]], doubling in place from [[1]].
    for (std::size_t s = 1; s < n; s *= 2) {
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                const std::int8_t v = m.cells[i * n + j];
                m.cells[i * n + (j + s)] = v;
                m.cells[(i + s) * n + j] = v;
                m.cells[(i + s) * n + (j + s)] = static_cast<std::int8_t>(-v);
            }
        }
    }
    return m;
}

BinaryDataset hadamard_dataset(unsigned k, std::size_t order_cap) {
    if (k == 0)
        throw std::invalid_argument("hadamard dataset needs order >= 2; order 1 has no feature columns");
    const HadamardMatrix m = sylvester_hadamard(k, order_cap);
    const std::size_t n = m.order;

    BinaryDataset ds;
    ds.name = "hadamard-" + std::to_string(n);
    ds.feature_names.reserve(n - 1);
    for (std::size_t j = 1; j < n; ++j) ds.feature_names.push_back("v" + std::to_string(j));

    ds.samples.reserve(n);
    ds.labels.reserve(n);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(n - 1);
        for (std::size_t j = 0; j + 1 < n; ++j) row[j] = m.at(i, j);
        ds.samples.push_back(std::move(row));
        const int label = m.at(i, n - 1) > 0 ? 1 : 0;
        positives += static_cast<std::size_t>(label);
        ds.labels.push_back(label);
    }
    if (positives * 2 != n)
        throw std::logic_error("hadamard dataset is not class balanced");
    return ds;
}

void render_matrix_pgm(const HadamardMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "P2\n" << matrix.order << ' ' << matrix.order << "\n255\n";
    for (std::size_t i = 0; i < matrix.order; ++i) {
        for (std::size_t j = 0; j < matrix.order; ++j) {
            if (j) out << ' ';
            out << (matrix.at(i, j) > 0 ? 255 : 0);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace antilearn
