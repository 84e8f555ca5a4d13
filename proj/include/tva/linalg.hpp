#pragma once

#include <optional>
#include <vector>

#include "tva/rational.hpp"

namespace tva {

/// Dense matrix over Q, row major.
using QMatrix = std::vector<std::vector<Rational>>;

QMatrix identity_matrix(int n);
int rank(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);

}  // namespace tva
