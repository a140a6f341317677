#include "l1split/jet.hpp"

#include "l1split/errors.hpp"
#include "l1split/linalg.hpp"
#include "l1split/series.hpp"

namespace l1split {

JetProgram::JetProgram(int n_vars) : n_vars_(n_vars) {
  for (int i = 0; i < n_vars; ++i) nodes_.push_back({Op::Var, -1, -1, Real(0)});
}

JetProgram::Node JetProgram::push(Op op, Node a, Node b, const Real& c) {
  nodes_.push_back({op, a, b, c});
  return static_cast<Node>(nodes_.size()) - 1;
}

JetProgram::Node JetProgram::constant(const Real& c) { return push(Op::Const, -1, -1, c); }
JetProgram::Node JetProgram::add(Node a, Node b) { return push(Op::Add, a, b, Real(0)); }
JetProgram::Node JetProgram::sub(Node a, Node b) { return push(Op::Sub, a, b, Real(0)); }
JetProgram::Node JetProgram::mul(Node a, Node b) { return push(Op::Mul, a, b, Real(0)); }
JetProgram::Node JetProgram::square(Node a) { return push(Op::Square, a, -1, Real(0)); }
JetProgram::Node JetProgram::neg(Node a) { return push(Op::Neg, a, -1, Real(0)); }
JetProgram::Node JetProgram::scale(const Real& c, Node a) { return push(Op::Scale, a, -1, c); }
JetProgram::Node JetProgram::add_const(Node a, const Real& c) { return push(Op::AddConst, a, -1, c); }
JetProgram::Node JetProgram::power(Node a, const Real& alpha) { return push(Op::Pow, a, -1, alpha); }
JetProgram::Node JetProgram::exp(Node a) { return push(Op::Exp, a, -1, Real(0)); }

std::pair<JetProgram::Node, JetProgram::Node> JetProgram::sin_cos(Node a) {
  Node s = push(Op::Sin, a, -1, Real(0));
  Node c = push(Op::Cos, a, s, Real(0));
  nodes_[static_cast<size_t>(s)].b = c;
  return {s, c};
}

void JetProgram::set_outputs(std::vector<Node> outputs) {
  if (static_cast<int>(outputs.size()) != n_vars_) {
    throw Error(ErrorKind::OrderMismatch, "field needs one output per variable");
  }
  outputs_ = std::move(outputs);
}

JetEvaluator::JetEvaluator(const JetProgram& program, int order)
    : program_(&program), order_(order), data_(program.nodes_.size()) {
  for (auto& d : data_) d.resize(static_cast<size_t>(order + 1));
}

void JetEvaluator::compute(int k) {
  using Op = JetProgram::Op;
  const auto& nodes = program_->nodes_;
  for (size_t id = static_cast<size_t>(program_->n_vars_); id < nodes.size(); ++id) {
    const auto& n = nodes[id];
    Real* out = data_[id].data();
    const Real* a = n.a >= 0 ? data_[static_cast<size_t>(n.a)].data() : nullptr;
    const Real* b = n.b >= 0 ? data_[static_cast<size_t>(n.b)].data() : nullptr;
    switch (n.op) {
      case Op::Var:
        break;
      case Op::Const:
        if (k == 0) out[0] = n.c;
        else mpfr_set_zero(out[k].get(), 1);
        break;
      case Op::Add:
        mpfr_add(out[k].get(), a[k].get(), b[k].get(), MPFR_RNDN);
        break;
      case Op::Sub:
        mpfr_sub(out[k].get(), a[k].get(), b[k].get(), MPFR_RNDN);
        break;
      case Op::Mul:
        kernel::convolve(out[k], a, b, k);
        break;
      case Op::Square:
        kernel::square(out[k], a, k);
        break;
      case Op::Neg:
        mpfr_neg(out[k].get(), a[k].get(), MPFR_RNDN);
        break;
      case Op::Scale:
        mpfr_mul(out[k].get(), a[k].get(), n.c.get(), MPFR_RNDN);
        break;
      case Op::AddConst:
        if (k == 0) mpfr_add(out[0].get(), a[0].get(), n.c.get(), MPFR_RNDN);
        else mpfr_set(out[k].get(), a[k].get(), MPFR_RNDN);
        break;
      case Op::Sin:
        kernel::sin_cos(out, data_[static_cast<size_t>(n.b)].data(), a, k);
        break;
      case Op::Cos:
        break;
      case Op::Pow:
        kernel::power(out, a, n.c, k);
        break;
      case Op::Exp:
        kernel::exp(out, a, k);
        break;
    }
  }
}

std::vector<Real> field_value(const JetProgram& program, const std::vector<Real>& z) {
  JetEvaluator ev(program, 0);
  for (int i = 0; i < program.n_vars(); ++i) ev.var(i)[0] = z[static_cast<size_t>(i)];
  ev.compute(0);
  std::vector<Real> f;
  f.reserve(z.size());
  for (int i = 0; i < program.n_vars(); ++i) f.push_back(ev.output(i)[0]);
  return f;
}

Matrix field_jacobian(const JetProgram& program, const std::vector<Real>& z) {
  const int n = program.n_vars();
  Matrix jac(n, n);
  JetEvaluator ev(program, 1);
  for (int i = 0; i < n; ++i) ev.var(i)[0] = z[static_cast<size_t>(i)];
  ev.compute(0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) ev.var(i)[1] = (i == j) ? 1 : 0;
    ev.compute(1);
    for (int i = 0; i < n; ++i) jac(i, j) = ev.output(i)[1];
  }
  return jac;
}

}  // namespace l1split
