#include "nearhol/conjecture.hpp"

#include <algorithm>

namespace nearhol {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Agree: return "agree";
    case Verdict::Disagree: return "disagree";
    case Verdict::Unknown: return "unknown";
    }
    return {};
}

int ConjectureReport::count(Verdict v) const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [&](const ConjectureRow& r) { return r.verdict == v; }));
}

ConjectureReport conjecture_scan(const BundleSpec& bundle, int cutoff, const RootSystemData& data,
                                 const MatrixModel& model, const QuadratureSpec& spec) {
    if (cutoff < 0) throw ParameterError("cutoff must be non-negative");
    ConjectureReport report;
    report.space = data.type.to_string();
    report.bundle = bundle;
    report.cutoff = cutoff;
    const bool probe = data.constants.r == 1 &&
                       (bundle.kind == BundleKind::LineBundle || bundle.kind == BundleKind::Cotangent);
    for (const auto& m : Partition::enumerate(static_cast<std::size_t>(data.constants.r), cutoff)) {
        ConjectureRow row;
        row.m = m;
        row.lambda = gamma_weight(m, data) + bundle.mu;
        row.minor_criterion = minor_l2_condition(m, bundle, data);
        const PolyMap pm = minor_poly(model, m);
        try {
            // the fiber factor is constant, so it does not change the degrees
            row.degrees = diagonal_degrees(model, pm);
        } catch (const BudgetError&) {
            report.rows.push_back(row);
            continue;
        }
        row.degree_criterion = degree_l2_necessary(row.lambda, row.degrees, data);
        if (probe) {
            const PolyMap p = pm * PolyMap::constant(highest_fiber_vector(model, bundle));
            row.probe = norm_probe(model, bundle, p, spec).classification;
        }
        const bool probe_conflict =
            row.probe && ((*row.probe == Classification::Convergent && !row.degree_criterion) ||
                          (*row.probe == Classification::Divergent && row.degree_criterion));
        if (row.degree_criterion != row.minor_criterion || probe_conflict) row.verdict = Verdict::Disagree;
        else row.verdict = Verdict::Agree;
        report.rows.push_back(row);
    }
    return report;
}

ConjectureReport conjecture_scan(const BundleSpec& bundle, int cutoff, const RootSystemData& data,
                                 const QuadratureSpec& spec) {
    const MatrixModel model(data.type);
    return conjecture_scan(bundle, cutoff, data, model, spec);
}

} // namespace nearhol
