#pragma once

#include "slt/model.hpp"

namespace slt {

/// Solution launched from -pi with (sin alpha, -cos alpha), carried across
/// the interface by the transmission conditions and on to pi.
FullTrace left_solution(const Problem& problem, double lambda);

/// Solution launched from pi with (-sin beta, cos beta), carried back
/// across the interface to -pi.
FullTrace right_solution(const Problem& problem, double lambda);

/// phi chi' - phi' chi at grid node `node` of the given side. Throws when the
/// node is outside that side's grid.
double wronskian(const FullTrace& phi, const FullTrace& chi, Side side, std::size_t node);

/// Median of the Wronskian over every node of one side.
double median_wronskian(const FullTrace& phi, const FullTrace& chi, Side side);

struct CharacteristicValue {
    double lambda = 0.0;
    double omega1 = 0.0;  ///< Wronskian on the left subinterval
    double omega2 = 0.0;  ///< Wronskian on the right subinterval
    double omega = 0.0;   ///< Delta34 * omega1; zero exactly at eigenvalues
    /// |Delta34 omega1 - Delta12 omega2| / max(1, |Delta34 omega1|)
    double consistency_residual = 0.0;
};

/// Evaluates the characteristic function at lambda.
CharacteristicValue characteristic(const Problem& problem, double lambda);

/// Both glued solutions and Omega at one lambda, for callers that need
/// the traces as well as the characteristic value.
struct FundamentalPair {
    FullTrace phi;
    FullTrace chi;
    CharacteristicValue value;
};

FundamentalPair fundamental_pair(const Problem& problem, double lambda);

}  // namespace slt
