#include "superkoszul/serialization.hpp"

namespace superkoszul {

nlohmann::ordered_json series_to_json(const SuperSeries& s) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    const auto& ctx = *s.context();
    for (auto& [m, c] : s.terms()) {
        nlohmann::ordered_json term;
        term["coeff"] = c.get_str();
        term["lambda"] = m.lambda;
        nlohmann::ordered_json even = nlohmann::ordered_json::object();
        for (auto& [v, e] : m.even) even[ctx.var(v).name] = e;
        nlohmann::ordered_json odd = nlohmann::ordered_json::array();
        std::uint64_t rest = m.odd;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            odd.push_back(ctx.var(v).name);
        }
        term["monomial"] = {{"even", std::move(even)}, {"odd", std::move(odd)}};
        out.push_back(std::move(term));
    }
    return out;
}

SuperSeries series_from_json(ContextPtr ctx, TruncationPolicy trunc, const nlohmann::json& j) {
    if (!j.is_array()) throw ArgumentError("series JSON must be a list of terms");
    SuperSeries out(ctx, std::move(trunc));
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("coeff"))
            throw ArgumentError("series term must be an object with a coeff");
        Rational c;
        try {
            c = Rational(term.at("coeff").get<std::string>());
        } catch (const std::exception&) {
            throw ArgumentError("bad rational coefficient in series term");
        }
        if (c.get_den() == 0) throw ArgumentError("zero denominator in series term");
        c.canonicalize();
        Monomial m;
        m.lambda = term.value("lambda", 0);
        if (term.contains("monomial")) {
            const auto& mono = term.at("monomial");
            if (mono.contains("even")) {
                std::map<int, int> exps;  // reorder by variable index
                for (auto& [name, e] : mono.at("even").items()) {
                    int v = ctx->require(name);
                    if (ctx->parity(v)) throw ParityError("even exponent on odd variable " + name);
                    int ei = e.get<int>();
                    if (ei <= 0) throw ArgumentError("even exponents must be positive");
                    exps[v] += ei;
                }
                for (auto& [v, e] : exps) m.even.emplace_back(v, e);
            }
            if (mono.contains("odd")) {
                for (const auto& name : mono.at("odd")) {
                    int v = ctx->require(name.get<std::string>());
                    if (!ctx->parity(v))
                        throw ParityError("odd factor uses even variable " + name.get<std::string>());
                    std::uint64_t bit = 1ull << v;
                    // ascending indices: each factor must exceed the ones seen
                    if (m.odd >= bit)
                        throw ArgumentError("odd factors must be distinct and in canonical order");
                    m.odd |= bit;
                }
            }
        }
        out.add_term(std::move(m), c);
    }
    return out;
}

}  // namespace superkoszul
