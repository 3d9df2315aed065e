#pragma once

#include <optional>
#include <variant>

#include "stratcomm/model.hpp"
#include "stratcomm/utility.hpp"

namespace stratcomm {

/// How the sender resolves ties among utility-maximizing reconstructions.
/// worst_case(t) realizes the pessimistic best response: whenever some
/// maximizer exceeds distortion t, one such is chosen (the receiver errs);
/// the lexicographic fallback makes runs reproducible.
struct TieRule {
    enum class Kind { worst_case, lex_min };
    Kind kind = Kind::lex_min;
    Rational threshold;

    static TieRule worst_case(Rational t) {
        if (t < 0 || t > 1) throw std::invalid_argument("TieRule: threshold outside [0,1]");
        return {Kind::worst_case, std::move(t)};
    }
    static TieRule lex_min() { return {Kind::lex_min, 0}; }
};

/// Canonical receiver strategy: g(x) = x on the image, g(x) = anchor off it.
/// The image is either an explicit set of sequences or a union of full type
/// classes; the latter is never materialized unless a sequence-level
/// computation asks for it.
class ReceiverStrategy {
  public:
    static ReceiverStrategy from_sequences(std::vector<Sequence> image,
                                           std::optional<Sequence> anchor = std::nullopt);
    static ReceiverStrategy from_type_classes(std::vector<TypeVector> classes,
                                              std::optional<Sequence> anchor = std::nullopt);

    long long n() const { return n_; }
    int q() const { return q_; }
    const Sequence& anchor() const { return anchor_; }
    bool is_type_union() const { return std::holds_alternative<std::vector<TypeVector>>(image_); }
    const std::vector<TypeVector>& classes() const;
    const std::vector<Sequence>& sequences() const;
    BigInt image_size() const;
    bool image_contains(const Sequence& x) const;

    /// Lexicographically sorted explicit image (expands type classes).
    std::vector<Sequence> expanded_image() const;

    Sequence apply(const Sequence& x) const;  // g itself

  private:
    ReceiverStrategy() = default;
    std::variant<std::vector<Sequence>, std::vector<TypeVector>> image_;
    Sequence anchor_;
    long long n_ = 0;
    int q_ = 0;
};

struct EvalOptions {
    bool collect_sets = false;   // keep D_d and A_d as explicit sequence lists
    long long cap = 1LL << 24;   // refuse q^n beyond this
    int threads = 1;
};

/// Everything one (g, worst-case s, d) evaluation produces.
struct GameOutcome {
    Rational recovered_prob;       // P(D_d)
    Rational error_prob;           // E_d = 1 - P(D_d)
    Rational coop_recovered_prob;  // nearest-neighbour baseline
    BigInt a_size;                 // |A_d|
    std::optional<double> rate_bits;  // log2|A_d| / n; empty A_d has no rate
    BigInt image_size;             // |image(g o s)|
    double image_rate_bits = 0;    // log2|image(g o s)| / n
    std::vector<Sequence> recovered;        // with collect_sets
    std::vector<Sequence> reconstructions;  // with collect_sets
};

/// The sender's reply to x: a utility maximizer over the image, ties per
/// the rule. Realizes one member of the worst-case best-response set.
Sequence best_response(const ReceiverStrategy& g, const Sequence& x, const UtilityMatrix& u,
                       const TieRule& tie);

/// Exact sequence-level evaluation over all q^n source sequences.
GameOutcome evaluate(const ReceiverStrategy& g, const UtilityMatrix& u, const Distribution& p,
                     const Rational& d, const TieRule& tie, const EvalOptions& opts = {});

/// Product strategy over split blocks: image = image(g1) x image(g2),
/// anchor = concatenated anchors.
ReceiverStrategy compose_time_share(const ReceiverStrategy& g1, const ReceiverStrategy& g2);

struct BruteForceResult {
    Rational min_error;
    std::vector<Sequence> witness_image;
};

/// Exact minimum over all nonempty images of the worst-case error at
/// threshold d; the off-image anchor never changes the attainable outcome
/// set, so only images are searched. Binary alphabet, n <= 4.
BruteForceResult brute_force_min_error(int n, const Distribution& p, const UtilityMatrix& u,
                                       const Rational& d, int threads = 1);

}  // namespace stratcomm
