#ifndef QMCERT_SHIMURA_HPP
#define QMCERT_SHIMURA_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmcert/quaternion.hpp"

namespace qmcert {

/// Conic model x^2 + y^2 + m = 0 of the genus-0 curve attached to the
/// discriminants 6, 10, 22 (m = 3, 2, 11 respectively).
struct ConicModel {
    Int d;
    Int m;
};

/// Genus-0 model for d in {6, 10, 22}; nullopt means genus > 0 (a typed
/// outcome, not an error).
std::optional<ConicModel> conic_model(const Int& d);

/// Points over Q_p: nonempty iff (-1, -m)_p = +1.
bool local_points_Qp(const ConicModel& model, const Int& p);

/// Real points: always empty for these models (m > 0); the claim is
/// consistency-checked against the Hilbert symbol at infinity.
bool real_points(const ConicModel& model);

/// For each prime of K above p (in splitting_data order): points over the
/// completion K_v.  Nonempty iff already nonempty over Q_p or the local
/// degree e_i*f_i is even.
std::vector<bool> local_points_Kv(const ConicModel& model, const NumberField& K, const Int& p);

struct GlobalPointsVerdict {
    enum class Kind { NonEmptyInfinite, Empty, UnsupportedGenus } kind;
    // obstruction witness for Empty
    bool real_obstruction = false;
    Int obstruction_p = 0;      // residue characteristic of the obstructing place
    unsigned obstruction_index = 0;  // which prime above p
    std::string describe() const;
};

/// Hasse-principle decision for M(K): checks the real places via the field
/// signature and the finite places dividing 2 * m * disc(basis); elsewhere
/// the conic has good reduction and smooth points lift.  A nonempty conic
/// over K has infinitely many points (it is a P^1 form with a point).
GlobalPointsVerdict global_points(const ConicModel& model, const NumberField& K);

struct ModuliFlags {
    bool genus_zero = true;
    bool points_representable_by_qm_surface = false;  // = B splits over K
    bool infinitely_many_qm_surfaces = false;         // nonempty + split
    bool trivial_emptiness = false;                   // real place or B non-split over K
};

ModuliFlags moduli_flags(const std::optional<ConicModel>& model, const NumberField& K,
                         const QuaternionAlgebra& B);

}  // namespace qmcert

#endif
