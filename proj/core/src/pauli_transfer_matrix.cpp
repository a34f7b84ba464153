// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "replab/pauli_transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "replab/errors.hpp"

namespace replab {
namespace {

using cd = std::complex<double>;

/// Dense square complex matrix, row-major.
struct CMatrix {
    int n;
    std::vector<cd> a;

    explicit CMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_) {
    }
    cd &operator()(int i, int j) {
        return a[static_cast<size_t>(i) * n + j];
    }
    cd operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * n + j];
    }
};

CMatrix matmul(const CMatrix &x, const CMatrix &y) {
    CMatrix out(x.n);
    for (int i = 0; i < x.n; ++i) {
        for (int k = 0; k < x.n; ++k) {
            cd xik = x(i, k);
            if (xik == cd{}) {
                continue;
            }
            for (int j = 0; j < x.n; ++j) {
                out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

CMatrix single_pauli(int which) {
    CMatrix m(2);
    switch (which) {
        case 0:
            m(0, 0) = 1;
            m(1, 1) = 1;
            break;
        case 1:
            m(0, 1) = 1;
            m(1, 0) = 1;
            break;
        case 2:
            m(0, 1) = cd(0, -1);
            m(1, 0) = cd(0, 1);
            break;
        default:
            m(0, 0) = 1;
            m(1, 1) = -1;
            break;
    }
    return m;
}

CMatrix kron(const CMatrix &x, const CMatrix &y) {
    CMatrix out(x.n * y.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            for (int k = 0; k < y.n; ++k)
                for (int l = 0; l < y.n; ++l)
                    out(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
    return out;
}

CMatrix pauli_matrix(int num_qubits, int index) {
    CMatrix m(1);
    m(0, 0) = 1;
    for (int q = num_qubits - 1; q >= 0; --q) {
        int digit = (index >> (2 * q)) & 3;
        m = kron(m, single_pauli(digit));
    }
    return m;
}

}  // namespace

PauliTransferMatrix::PauliTransferMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(1 << (2 * num_qubits)), entries_(static_cast<size_t>(dim_) * dim_, 0.0) {
    if (num_qubits < 1 || num_qubits > 3) {
        throw DomainError("num_qubits", "supported range is 1..3");
    }
    for (int i = 0; i < dim_; ++i) {
        (*this)(i, i) = 1.0;
    }
}

PauliTransferMatrix PauliTransferMatrix::from_pauli_channel(int num_qubits, std::span<const double> probs) {
    PauliTransferMatrix out(num_qubits);
    int dim = out.dim_;
    if (static_cast<int>(probs.size()) != dim) {
        throw DomainError("probs", "expected 4^num_qubits entries");
    }
    int hilbert = 1 << num_qubits;
    std::vector<CMatrix> paulis;
    paulis.reserve(dim);
    for (int k = 0; k < dim; ++k) {
        paulis.push_back(pauli_matrix(num_qubits, k));
    }
    for (int j = 0; j < dim; ++j) {
        // E(P_j) = sum_k c_k P_k P_j P_k (Paulis are Hermitian).
        CMatrix image(hilbert);
        for (int k = 0; k < dim; ++k) {
            if (probs[k] == 0.0) {
                continue;
            }
            CMatrix term = matmul(matmul(paulis[k], paulis[j]), paulis[k]);
            for (size_t e = 0; e < image.a.size(); ++e) {
                image.a[e] += probs[k] * term.a[e];
            }
        }
        for (int i = 0; i < dim; ++i) {
            CMatrix prod = matmul(paulis[i], image);
            cd trace = 0;
            for (int d = 0; d < hilbert; ++d) {
                trace += prod(d, d);
            }
            out(i, j) = trace.real() / hilbert;
        }
    }
    return out;
}

PauliTransferMatrix PauliTransferMatrix::single_pauli_flip(std::string_view label, double prob) {
    int n = static_cast<int>(label.size());
    std::vector<double> probs(static_cast<size_t>(1) << (2 * n), 0.0);
    probs[0] += 1.0 - prob;
    probs[pauli_index(label)] += prob;
    return from_pauli_channel(n, probs);
}

PauliTransferMatrix PauliTransferMatrix::operator*(const PauliTransferMatrix &other) const {
    if (other.dim_ != dim_) {
        throw DomainError("other", "PTM dimension mismatch");
    }
    PauliTransferMatrix out(num_qubits_);
    std::fill(out.entries_.begin(), out.entries_.end(), 0.0);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            double v = (*this)(i, k);
            if (v == 0.0) {
                continue;
            }
            for (int j = 0; j < dim_; ++j) {
                out(i, j) += v * other(k, j);
            }
        }
    return out;
}

double PauliTransferMatrix::max_abs_diff(const PauliTransferMatrix &other) const {
    if (other.dim_ != dim_) {
        throw DomainError("other", "PTM dimension mismatch");
    }
    double m = 0;
    for (size_t e = 0; e < entries_.size(); ++e) {
        m = std::max(m, std::abs(entries_[e] - other.entries_[e]));
    }
    return m;
}

bool PauliTransferMatrix::is_diagonal(double tol) const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (i != j && std::abs((*this)(i, j)) > tol) {
                return false;
            }
    return true;
}

int pauli_index(std::string_view label) {
    int index = 0;
    for (char c : label) {
        int digit;
        switch (c) {
            case 'I':
            case '_':
                digit = 0;
                break;
            case 'X':
                digit = 1;
                break;
            case 'Y':
                digit = 2;
                break;
            case 'Z':
                digit = 3;
                break;
            default:
                throw DomainError("label", std::string("not a Pauli character: ") + c);
        }
        index = index * 4 + digit;
    }
    return index;
}

}  // namespace replab
