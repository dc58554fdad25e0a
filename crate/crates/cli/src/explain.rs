//! `--explain <op>`: the defining formula behind each surfaced operation.

/// Operation names with their formulas, in listing order.
const ENTRIES: &[(&str, &str)] = &[
    (
        "entropy",
        "D(q) = -sum_i q_i * log2(q_i), in bits, with 0 * log2(0) = 0.\n\
         Shannon entropy of a probability vector; maximal at the uniform vector.",
    ),
    (
        "unification_force",
        "U^j(y) = -sum_{e in P} P^j_y(e) * C^j_y(e).\n\
         Negative expected value of cost component j over the population,\n\
         averaged with the state-dependent probabilities P^j_y. Always <= 0;\n\
         larger is better adapted.",
    ),
    (
        "diversification_force",
        "D(gamma) = -sum_i Q_gamma(i) * log2(Q_gamma(i)).\n\
         Entropy of the production probability Q_gamma derived from the goods\n\
         vector of the interaction family. Larger means less concentrated\n\
         production.",
    ),
    (
        "better_adapted",
        "state(t) >= state(s) iff U^j(t) >= U^j(s) for every j and D(t) >= D(s).\n\
         Componentwise, ties allowed; a reflexive and transitive order.",
    ),
    (
        "emergent_pattern",
        "A candidate (u, d) is an emergent pattern over a sample of traces iff\n\
         u_j >= u_j(omega, t) for every j and d >= d(omega, t), at every time t\n\
         of every sampled trace omega. Certified on the finite sample only.",
    ),
    (
        "force_trace",
        "Evaluates every unification force and the diversification force at\n\
         each grid time, reading only the state prefix up to that time.",
    ),
    (
        "minimize_ratio",
        "argmin E(x) / D(x) over the interior of the probability simplex,\n\
         by projected gradient descent with a backtracking line search that\n\
         only accepts ratio-decreasing steps.",
    ),
    (
        "verify_hypotheses",
        "Checks dE/dx_k <= alpha_k(y) * log2(k) for every rank k >= 2, and the\n\
         normalization chain N(y) >= 1/y_1 >= e with\n\
         N(y) = sum_k k^(-alpha_k(y) * D(y)/E(y)).",
    ),
    (
        "predicted_distribution",
        "q_k = k^(-alpha_k(y) * beta) / N(y) with beta = D(y)/E(y); a rank\n\
         power law. Defined only where verify_hypotheses passes.",
    ),
    (
        "exponent_rate",
        "beta = D(y) / E(y): entropy over energy at y, the rate multiplying\n\
         the exponent coefficients alpha_k in the predicted power law.",
    ),
    (
        "stationarity",
        "log2(y_k) + (D/E) * dE/dx_k + log2(e) is constant over ranks k >= 2\n\
         at an interior minimizer of E/D; the spread of these values is a\n\
         convergence certificate.",
    ),
    (
        "fit_exponent",
        "Least-squares line through (log2 k, log2 q_k) for k = 1..d; the slope\n\
         is the fitted power-law exponent, r2 the goodness of fit.",
    ),
    (
        "land_value",
        "L_b(x) = y_b(x) * (p_b - c_b(x) - F_b(j(x))): yield times price minus\n\
         production cost minus transport cost at the location's impedance.",
    ),
    (
        "net_value",
        "net_b(x) = L_b(x) - k_b(x): land value minus the life cost of the plot.",
    ),
    (
        "ideal_rent",
        "R(x) = max_b net_b(x): the most any commodity's producer can pay at x\n\
         without losing money.",
    ),
    (
        "tenant_cost",
        "C_t(b, x, r) = r - net_b(x) when r > net_b(x), else the floor c_0t.\n\
         What a company overpays against its net land value.",
    ),
    (
        "renter_loss1",
        "L_r1(b, x, r) = net_b(x) - r when r < net_b(x), else the floor l_1r.\n\
         What a landlord concedes against the sitting tenant's net value.",
    ),
    (
        "renter_loss2",
        "L_r2(x, r) = R(x) - r when r < R(x), else the floor l_2r.\n\
         What a landlord concedes against the best possible tenant.",
    ),
    (
        "renter_tax_cost",
        "C_r(x, r) = tax(x) - r when r < tax(x), else 0: the shortfall of the\n\
         rent below the location's tax.",
    ),
    (
        "vt_configuration",
        "Every company rents a location good for its commodity (its net value\n\
         attains the ideal rent there) at exactly that net value.",
    ),
    (
        "equivalence",
        "Over every configuration on a finite rent grid: the minimizers of the\n\
         three expected costs (tenant cost, both renter losses) are exactly\n\
         the VT configurations; without good locations for every commodity,\n\
         no configuration attains all three floors at once.",
    ),
    (
        "tax_band",
        "In the tax variant, minimizers of expected tenant cost and expected\n\
         tax shortfall are exactly the configurations with\n\
         tax(x) <= rent <= net_b(x) for every company.",
    ),
    (
        "impedance_bounds",
        "[min, max] impedance over the locations good for a commodity: the\n\
         band (zone) it occupies around the market.",
    ),
    (
        "zones_disjoint",
        "If moving toward the market gains the inner commodity at least as\n\
         much land value as the outer one at every grid pair, and their net\n\
         values never tie, then the inner band ends before the outer begins.",
    ),
    (
        "flux_entropy",
        "D(phi_b) = entropy of a commodity's flux shares normalized to\n\
         probabilities; maximal when every company carries the same share.",
    ),
    (
        "maximize_flux_entropy",
        "argmax of the flux entropy under sum phi_a = Delta: the equal split\n\
         phi_a = Delta / n for all n companies. Cross-checked against the\n\
         simplex optimizer with constant energy before returning.",
    ),
    (
        "adapt",
        "Seeded local search over placements, rents, and fluxes that accepts a\n\
         move only when no expected cost rises and the flux entropy does not\n\
         fall, with something improving strictly; its force trace is\n\
         non-decreasing by construction.",
    ),
];

pub fn lookup(op: &str) -> Option<String> {
    ENTRIES
        .iter()
        .find(|(name, _)| *name == op)
        .map(|(name, text)| format!("{name}\n\n{text}"))
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(name, _)| *name).collect()
}
