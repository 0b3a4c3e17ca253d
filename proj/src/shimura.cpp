#include "qmcert/shimura.hpp"

#include <algorithm>

#include "qmcert/primes.hpp"

namespace qmcert {

std::optional<ConicModel> conic_model(const Int& d)
{
    if (d == 6) return ConicModel{d, Int(3)};
    if (d == 10) return ConicModel{d, Int(2)};
    if (d == 22) return ConicModel{d, Int(11)};
    return std::nullopt;  // genus > 0
}

bool local_points_Qp(const ConicModel& model, const Int& p)
{
    return hilbert_symbol(Rat(-1), Rat(-model.m), Place::finite(p)) == 1;
}

bool real_points(const ConicModel& model)
{
    if (hilbert_symbol(Rat(-1), Rat(-model.m), Place::at_infinity()) != -1)
        throw internal_error("conic with m > 0 must be anisotropic over R");
    return false;
}

std::vector<bool> local_points_Kv(const ConicModel& model, const NumberField& K, const Int& p)
{
    bool over_qp = local_points_Qp(model, p);
    SplittingData sd = K.splitting_data(p);
    std::vector<bool> out;
    for (auto [e, f] : sd.factors)
        out.push_back(over_qp || (e * f) % 2 == 0);
    return out;
}

std::string GlobalPointsVerdict::describe() const
{
    switch (kind) {
        case Kind::NonEmptyInfinite:
            return "nonempty with infinitely many K-points";
        case Kind::UnsupportedGenus:
            return "no genus-0 model for this discriminant";
        case Kind::Empty:
            if (real_obstruction) return "empty: K has a real place";
            return "empty: no points over the completion at the place above " +
                   obstruction_p.get_str() + " (prime #" + std::to_string(obstruction_index) + ")";
    }
    return "";
}

GlobalPointsVerdict global_points(const ConicModel& model, const NumberField& K)
{
    GlobalPointsVerdict v;
    if (K.has_real_place()) {
        v.kind = GlobalPointsVerdict::Kind::Empty;
        v.real_obstruction = true;
        return v;
    }
    // finite places: only those dividing 2 * m * disc(basis) can obstruct;
    // elsewhere the conic has good reduction and a smooth residue point lifts
    std::vector<Int> ps = prime_divisors(2 * model.m * K.basis_disc());
    for (const Int& p : ps) {
        std::vector<bool> locs = local_points_Kv(model, K, p);
        for (size_t i = 0; i < locs.size(); ++i) {
            if (!locs[i]) {
                v.kind = GlobalPointsVerdict::Kind::Empty;
                v.obstruction_p = p;
                v.obstruction_index = static_cast<unsigned>(i);
                return v;
            }
        }
    }
    v.kind = GlobalPointsVerdict::Kind::NonEmptyInfinite;
    return v;
}

ModuliFlags moduli_flags(const std::optional<ConicModel>& model, const NumberField& K,
                         const QuaternionAlgebra& B)
{
    ModuliFlags flags;
    bool split = splits_over_K(B, K);
    flags.points_representable_by_qm_surface = split;
    flags.trivial_emptiness = K.has_real_place() || !split;
    if (!model) {
        flags.genus_zero = false;
        flags.infinitely_many_qm_surfaces = false;
        return flags;
    }
    flags.genus_zero = true;
    GlobalPointsVerdict gp = global_points(*model, K);
    flags.infinitely_many_qm_surfaces =
        gp.kind == GlobalPointsVerdict::Kind::NonEmptyInfinite && split;
    return flags;
}

}  // namespace qmcert
