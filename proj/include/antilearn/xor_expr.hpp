#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "antilearn/dataset.hpp"

namespace antilearn {

// Binary XOR aggregation tree over the variables a..h. A variable may appear
// at several leaves or not at all. Values are copyable; nodes live in a flat
// pool with the root stored last.
class XorExpr {
public:
    static XorExpr variable(char name);
    static XorExpr xor_of(const XorExpr& lhs, const XorExpr& rhs);

    // Grammar: expr := var | "xor(" expr "," expr ")" with var in a..h;
    // whitespace is ignored. Throws std::invalid_argument on malformed text.
    static XorExpr parse(std::string_view text);

    // XOR-fold of the tree. Every variable appearing in the expression must
    // be bound; a missing one raises std::invalid_argument naming it.
    int eval(const std::map<char, int>& assignment) const;

    // Distinct variables, sorted.
    std::vector<char> variables() const;

    std::string str() const;

private:
    struct Node {
        char var = 0;       // nonzero for leaves
        int lhs = -1;
        int rhs = -1;
    };

    XorExpr() = default;
    int append(const XorExpr& other);  // returns the copied root index

    std::vector<Node> nodes_;
};

int eval_xor_expr(const XorExpr& expr, const std::map<char, int>& assignment);

// The two fixed aggregation trees used by the synthetic datasets:
// pyramid: xor(xor(xor(a,b),xor(c,d)),xor(xor(e,f),xor(g,h)))
// random:  xor(xor(xor(d,g),xor(a,d)),xor(xor(h,f),xor(d,b)))
XorExpr pyramid_xor_expr();
XorExpr random_xor_expr();

// 256 rows enumerating a..h in binary counting order (a is the most
// significant bit), labelled by expr.
BinaryDataset xor_dataset(const XorExpr& expr, std::string name);

BinaryDataset pyramid_xor_dataset();  // "pyramid-xor"
BinaryDataset random_xor_dataset();   // "random-xor"

}  // namespace antilearn
