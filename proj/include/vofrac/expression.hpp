#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace vofrac {

/// Which coordinate a 1-D operator runs along. Expressions name the temporal
/// variable `t` and the spatial one `x`; the axis decides which of the two
/// the integration variable binds to.
enum class Axis { time, space };

/// Variable bindings for expression evaluation. Unbound variables referenced
/// by the expression raise DomainError.
struct EvalVars {
    std::optional<double> t;
    std::optional<double> x;
};

/// Binds `primary` to the axis variable and, for the temporal axis, an
/// optional fixed spatial parameter to `x`.
inline EvalVars bind_axis(Axis axis, double primary,
                          std::optional<double> parameter = {}) {
    if (axis == Axis::time) return EvalVars{primary, parameter};
    return EvalVars{parameter, primary};
}

/// A parsed arithmetic expression in the variables t and x.
///
/// Grammar:
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' factor)?
///   base   := number | 't' | 'x' | func '(' expr ')' | '(' expr ')'
///   func   := 'exp' | 'sin' | 'cos' | 'ln' | 'abs'
/// Numbers are decimal with an optional exponent; '^' is right-associative
/// real power. Evaluation is pure; ln of a non-positive argument is a
/// DomainError at evaluation time.
class Expression {
public:
    struct Node;

    /// Parses source text, throwing ParseError (with byte offset and the
    /// expected-token set) on malformed input.
    static Expression parse(std::string_view src);

    static Expression constant(double value);

    /// a0 + a1 * e, built structurally (no re-parsing).
    static Expression affine(double a0, double a1, const Expression& e);

    double eval(const EvalVars& vars) const;
    double eval_time(double t) const { return eval(EvalVars{t, std::nullopt}); }

    bool references_t() const;
    bool references_x() const;

    /// Source text when parsed, or a synthesized description.
    const std::string& text() const noexcept { return text_; }

private:
    explicit Expression(std::shared_ptr<const Node> root, std::string text);

    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace vofrac
