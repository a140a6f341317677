#pragma once

#include <utility>
#include <vector>

#include "l1split/real.hpp"

namespace l1split {

// A vector field written as a DAG of elementary operations. Evaluating the DAG
// on truncated series one coefficient at a time yields Taylor jets of solutions
// (flow) and the homogeneous terms of the invariance equation (manifold).
// Constants are captured at the precision active when the program is built.
class JetProgram {
 public:
  using Node = int;

  explicit JetProgram(int n_vars);

  Node var(int i) const { return i; }
  Node constant(const Real& c);
  Node add(Node a, Node b);
  Node sub(Node a, Node b);
  Node mul(Node a, Node b);
  Node square(Node a);
  Node neg(Node a);
  Node scale(const Real& c, Node a);
  Node add_const(Node a, const Real& c);
  // Returns (sin a, cos a).
  std::pair<Node, Node> sin_cos(Node a);
  // a^alpha, requires a_0 > 0 wherever evaluated.
  Node power(Node a, const Real& alpha);
  Node exp(Node a);

  void set_outputs(std::vector<Node> outputs);

  int n_vars() const { return n_vars_; }
  int n_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Node>& outputs() const { return outputs_; }

 private:
  friend class JetEvaluator;
  enum class Op { Var, Const, Add, Sub, Mul, Square, Neg, Scale, AddConst, Sin, Cos, Pow, Exp };
  struct NodeDef {
    Op op;
    Node a = -1;
    Node b = -1;
    Real c;
  };
  Node push(Op op, Node a, Node b, const Real& c);

  int n_vars_;
  std::vector<NodeDef> nodes_;
  std::vector<Node> outputs_;
};

// Coefficient storage for one program at a fixed truncation order.
class JetEvaluator {
 public:
  JetEvaluator(const JetProgram& program, int order);

  int order() const { return order_; }
  const JetProgram& program() const { return *program_; }
  Real* var(int i) { return data_[static_cast<size_t>(i)].data(); }
  const Real* var(int i) const { return data_[static_cast<size_t>(i)].data(); }
  const Real* node(int id) const { return data_[static_cast<size_t>(id)].data(); }
  const Real* output(int i) const { return node(program_->outputs_[static_cast<size_t>(i)]); }
  // Computes coefficient k of every non-variable node. Variables must already
  // hold coefficients 0..k, and all nodes coefficients 0..k-1.
  void compute(int k);

 private:
  const JetProgram* program_;
  int order_;
  std::vector<std::vector<Real>> data_;
};

struct Matrix;

// Pointwise field value.
std::vector<Real> field_value(const JetProgram& program, const std::vector<Real>& z);
// Exact Jacobian from first-order jets along coordinate directions.
Matrix field_jacobian(const JetProgram& program, const std::vector<Real>& z);

}  // namespace l1split
