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

#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace replab {

/// Real Pauli-transfer-matrix representation of an n-qubit channel,
/// R_ij = tr(P_i E(P_j)) / 2^n.
///
/// Pauli ordering per qubit is (I, X, Y, Z); the first qubit is the most
/// significant base-4 digit, so for two qubits index = 4 * data + ancilla.
class PauliTransferMatrix {
   public:
    explicit PauliTransferMatrix(int num_qubits);  // identity channel

    /// Builds the PTM of rho -> sum_k probs[k] P_k rho P_k by explicit
    /// matrix arithmetic. probs.size() must be 4^num_qubits.
    static PauliTransferMatrix from_pauli_channel(int num_qubits, std::span<const double> probs);

    /// (1 - prob) * id + prob * P for the Pauli string named by label ("XZ", "IZ", ...).
    static PauliTransferMatrix single_pauli_flip(std::string_view label, double prob);

    int num_qubits() const {
        return num_qubits_;
    }
    int dim() const {
        return dim_;
    }
    double operator()(int row, int col) const {
        return entries_[static_cast<size_t>(row) * dim_ + col];
    }
    double &operator()(int row, int col) {
        return entries_[static_cast<size_t>(row) * dim_ + col];
    }

    /// Channel composition: (*this) applied after other.
    PauliTransferMatrix operator*(const PauliTransferMatrix &other) const;

    double max_abs_diff(const PauliTransferMatrix &other) const;
    bool is_diagonal(double tol = 0.0) const;

   private:
    int num_qubits_;
    int dim_;
    std::vector<double> entries_;
};

/// Index of a Pauli string label in the (I, X, Y, Z)^n ordering.
int pauli_index(std::string_view label);

}  // namespace replab
