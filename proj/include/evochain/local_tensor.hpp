#ifndef EVOCHAIN_LOCAL_TENSOR_HPP
#define EVOCHAIN_LOCAL_TENSOR_HPP

#include <string>
#include <vector>

namespace evochain {

// Offspring-production tensor b(u,v,w,z): probability that selected parents
// (u,v) produce the ordered offspring pair (w,z). Each (u,v) slice is a
// probability distribution over (w,z).
class LocalTransitionMatrix {
  public:
    LocalTransitionMatrix(int r, std::vector<double> b);

    int r() const { return r_; }
    double operator()(int u, int v, int w, int z) const {
        return b_[static_cast<size_t>(((u * r_ + v) * r_ + w)) * r_ + z];
    }
    const std::vector<double>& values() const { return b_; }

  private:
    int r_;
    std::vector<double> b_;
};

// b(u,v,u,v) = 1: offspring always equal the parents.
LocalTransitionMatrix identity_tensor(int r);

// The two-type tensor whose pairwise chain is the dictatorial coin,
// valid for 0 < epsilon <= 1/8.
LocalTransitionMatrix dictatorial_tensor(double epsilon);

// Loads {"r": int, "b": [[u,v,w,z,value], ...]} with unlisted entries zero.
LocalTransitionMatrix load_tensor_json(const std::string& path);
std::string tensor_to_json(const LocalTransitionMatrix& b);

}  // namespace evochain

#endif
