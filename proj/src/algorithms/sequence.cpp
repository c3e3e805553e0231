#include "algotrace/algorithms/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common.hpp"

namespace algotrace {

using detail::emit;
using detail::graph_scalar;
using detail::Ints;
using detail::push_inputs;
using detail::push_outputs;
using detail::Reals;

namespace {

/// Strict order on nodes by (key, position); equal keys keep position order.
struct KeyOrder {
  const Reals& key;
  bool operator()(int a, int b) const { return key[a] < key[b] || (key[a] == key[b] && a < b); }
};

int checked_size(const Reals& values) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "instance has no nodes");
  return static_cast<int>(values.size());
}

Ints chain(const std::vector<int>& order) {
  return chain_pointers(order, static_cast<int>(order.size()));
}

std::vector<int> iota_order(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TrajectoryBuilder keyed_builder(std::string_view id, const SeqInstance& inst) {
  const int n = checked_size(inst.key);
  TrajectoryBuilder b(get_spec(id), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"key", inst.key}});
  return b;
}

Trajectory insertion_sort(const SeqInstance& inst) {
  auto b = keyed_builder("insertion_sort", inst);
  const int n = b.nodes();
  const KeyOrder less{inst.key};

  Ints pred(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pred[i] = i == 0 ? 0 : i - 1;
  emit(b, {{"pred_h", pred}, {"iter", one_hot(0, n)}, {"slot", one_hot(0, n)}});

  for (int iter = 1; iter < n; ++iter) {
    int max_node = 0;
    for (int j = 1; j < iter; ++j) {
      if (less(max_node, j)) max_node = j;
    }
    int slot = max_node;
    if (less(max_node, iter)) {
      pred[iter] = slot;
    } else {
      slot = -1;
      for (int j = 0; j < iter; ++j) {
        if (less(iter, j) && (slot < 0 || less(j, slot))) slot = j;
      }
      Ints next = pred;
      for (int i = 0; i < n; ++i) {
        if (i == slot) {
          next[i] = iter;
        } else if (i == iter) {
          next[i] = pred[slot] == slot ? iter : pred[slot];
        } else if (pred[i] == iter) {
          next[i] = max_node;
        }
      }
      pred = std::move(next);
    }
    emit(b, {{"pred_h", pred}, {"iter", one_hot(iter, n)}, {"slot", one_hot(slot, n)}});
  }
  push_outputs(b, {{"pred", pred}});
  return b.finalize();
}

Trajectory bubble_sort(const SeqInstance& inst) {
  auto b = keyed_builder("bubble_sort", inst);
  const int n = b.nodes();
  const KeyOrder less{inst.key};
  auto a = iota_order(n);

  emit(b, {{"pred_h", chain(a)}, {"i", one_hot(a[0], n)}, {"j", one_hot(a[n - 1], n)}});
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = n - 1; j > i; --j) {
      if (less(a[j], a[j - 1])) std::swap(a[j], a[j - 1]);
      emit(b, {{"pred_h", chain(a)}, {"i", one_hot(a[i], n)}, {"j", one_hot(a[j], n)}});
    }
  }
  push_outputs(b, {{"pred", chain(a)}});
  return b.finalize();
}

class Heapsort {
 public:
  Heapsort(TrajectoryBuilder& b, const Reals& key)
      : b_(b), n_(b.nodes()), less_{key}, a_(iota_order(n_)), heap_size_(n_) {}

  std::vector<int> run() {
    record(0, 0);
    for (int i = n_ / 2 - 1; i >= 0; --i) heapify(i);
    phase_ = 1;
    for (int end = n_ - 1; end >= 1; --end) {
      std::swap(a_[0], a_[end]);
      heap_size_ = end;
      heapify(0);
    }
    return a_;
  }

 private:
  void heapify(int i) {
    while (true) {
      const int l = 2 * i + 1;
      const int r = 2 * i + 2;
      int largest = i;
      if (l < heap_size_ && less_(a_[largest], a_[l])) largest = l;
      if (r < heap_size_ && less_(a_[largest], a_[r])) largest = r;
      if (largest == i) {
        record(i, i);
        return;
      }
      std::swap(a_[i], a_[largest]);
      // The sifted node now sits at `largest`; the promoted one at `i`.
      record(largest, i);
      i = largest;
    }
  }

  void record(int sifted_slot, int promoted_slot) {
    Ints parent = identity_pointers(n_);
    for (int k = 1; k < heap_size_; ++k) parent[a_[k]] = a_[(k - 1) / 2];
    emit(b_, {{"pred_h", chain_pointers(a_, n_)},
              {"parent", std::move(parent)},
              {"i", one_hot(a_[sifted_slot], n_)},
              {"largest", one_hot(a_[promoted_slot], n_)},
              {"heap_size", one_hot(a_[heap_size_ - 1], n_)},
              {"phase", detail::graph_int(phase_)}});
  }

  TrajectoryBuilder& b_;
  int n_;
  KeyOrder less_;
  std::vector<int> a_;
  int heap_size_;
  std::int32_t phase_ = 0;
};

/// Lomuto partitioning shared by quicksort and quickselect.
class Partitioner {
 public:
  Partitioner(TrajectoryBuilder& b, const Reals& key)
      : b_(b), n_(b.nodes()), less_{key}, a_(iota_order(n_)) {}

  void record_initial() { record(0, n_ - 1, 0, 0); }

  int partition(int p, int r) {
    const int pivot = a_[r];
    int i = p - 1;
    for (int j = p; j < r; ++j) {
      if (less_(a_[j], pivot)) {
        ++i;
        std::swap(a_[i], a_[j]);
      }
      record(p, r, i + 1, j);
    }
    std::swap(a_[i + 1], a_[r]);
    record(p, r, i + 1, r);
    return i + 1;
  }

  void sort(int p, int r) {
    if (p >= r) return;
    const int q = partition(p, r);
    sort(p, q - 1);
    sort(q + 1, r);
  }

  int select(int p, int r, int k) {
    while (p < r) {
      const int q = partition(p, r);
      if (q == k) return a_[q];
      if (k < q) {
        r = q - 1;
      } else {
        p = q + 1;
      }
    }
    return a_[p];
  }

  [[nodiscard]] const std::vector<int>& order() const { return a_; }

 private:
  void record(int lo, int hi, int boundary, int j) {
    emit(b_, {{"pred_h", chain_pointers(a_, n_)},
              {"lo", one_hot(a_[lo], n_)},
              {"hi", one_hot(a_[hi], n_)},
              {"boundary", one_hot(a_[boundary], n_)},
              {"j", one_hot(a_[j], n_)}});
  }

  TrajectoryBuilder& b_;
  int n_;
  KeyOrder less_;
  std::vector<int> a_;
};

Trajectory heapsort(const SeqInstance& inst) {
  auto b = keyed_builder("heapsort", inst);
  const auto order = Heapsort(b, inst.key).run();
  push_outputs(b, {{"pred", chain(order)}});
  return b.finalize();
}

Trajectory quicksort(const SeqInstance& inst) {
  auto b = keyed_builder("quicksort", inst);
  Partitioner part(b, inst.key);
  part.record_initial();
  part.sort(0, b.nodes() - 1);
  push_outputs(b, {{"pred", chain(part.order())}});
  return b.finalize();
}

Trajectory minimum(const SeqInstance& inst) {
  auto b = keyed_builder("minimum", inst);
  const int n = b.nodes();
  const KeyOrder less{inst.key};
  int best = 0;
  emit(b, {{"min_h", one_hot(0, n)}, {"i", one_hot(0, n)}});
  for (int i = 1; i < n; ++i) {
    if (less(i, best)) best = i;
    emit(b, {{"min_h", one_hot(best, n)}, {"i", one_hot(i, n)}});
  }
  push_outputs(b, {{"min", one_hot(best, n)}});
  return b.finalize();
}

Trajectory binary_search(const SeqInstance& inst) {
  const int n = checked_size(inst.key);
  if (!inst.target) throw Error(ErrorKind::PreconditionViolated, "binary_search needs a target");
  if (!std::is_sorted(inst.key.begin(), inst.key.end())) {
    throw Error(ErrorKind::PreconditionViolated, "binary_search keys must be ascending");
  }
  const double target = *inst.target;
  TrajectoryBuilder b(get_spec("binary_search"), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"key", inst.key}, {"target", graph_scalar(target)}});

  int low = 0;
  int high = n - 1;
  int mid = (low + high + 1) / 2;
  emit(b, {{"low", one_hot(low, n)}, {"high", one_hot(high, n)}, {"mid", one_hot(mid, n)}});
  while (low < high) {
    mid = (low + high + 1) / 2;
    if (inst.key[mid] <= target) {
      low = mid;
    } else {
      high = mid - 1;
    }
    emit(b, {{"low", one_hot(low, n)}, {"high", one_hot(high, n)}, {"mid", one_hot(mid, n)}});
  }
  push_outputs(b, {{"result", one_hot(low, n)}});
  return b.finalize();
}

Trajectory quickselect(const SeqInstance& inst) {
  auto b = keyed_builder("quickselect", inst);
  const int n = b.nodes();
  Partitioner part(b, inst.key);
  part.record_initial();
  const int chosen = part.select(0, n - 1, quickselect_rank(n));
  push_outputs(b, {{"median", one_hot(chosen, n)}});
  return b.finalize();
}

Trajectory activity_selection(const SeqInstance& inst) {
  const int n = checked_size(inst.start);
  if (inst.finish.size() != inst.start.size()) {
    throw Error(ErrorKind::PreconditionViolated, "start/finish length mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (!(inst.start[i] <= inst.finish[i])) {
      throw Error(ErrorKind::PreconditionViolated, "activity " + std::to_string(i) + " ends before it starts");
    }
  }
  TrajectoryBuilder b(get_spec("activity_selection"), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"s", inst.start}, {"f", inst.finish}});

  auto order = iota_order(n);
  std::sort(order.begin(), order.end(), KeyOrder{inst.finish});
  const Ints pred = chain(order);
  Ints selected(static_cast<std::size_t>(n), 0);
  int k = order[0];
  selected[k] = 1;
  emit(b, {{"pred_h", pred}, {"selected_h", selected}, {"m", one_hot(k, n)}, {"k", one_hot(k, n)}});
  for (int idx = 1; idx < n; ++idx) {
    const int m = order[idx];
    if (inst.start[m] >= inst.finish[k]) {
      selected[m] = 1;
      k = m;
    }
    emit(b, {{"pred_h", pred}, {"selected_h", selected}, {"m", one_hot(m, n)}, {"k", one_hot(k, n)}});
  }
  push_outputs(b, {{"selected", selected}});
  return b.finalize();
}

bool schedulable(const Ints& selected, const Reals& deadline) {
  const int n = static_cast<int>(deadline.size());
  std::vector<int> due(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    if (selected[i]) ++due[std::min(n, static_cast<int>(deadline[i]))];
  }
  int running = 0;
  for (int t = 1; t <= n; ++t) {
    running += due[t];
    if (running > t) return false;
  }
  return true;
}

Trajectory task_scheduling(const SeqInstance& inst) {
  const int n = checked_size(inst.deadline);
  if (inst.weight.size() != inst.deadline.size()) {
    throw Error(ErrorKind::PreconditionViolated, "deadline/weight length mismatch");
  }
  for (int i = 0; i < n; ++i) {
    const double d = inst.deadline[i];
    if (!(d >= 1.0) || d != std::floor(d)) {
      throw Error(ErrorKind::PreconditionViolated, "deadlines must be integers >= 1");
    }
    if (!(inst.weight[i] >= 0.0)) {
      throw Error(ErrorKind::PreconditionViolated, "weights must be non-negative");
    }
  }
  TrajectoryBuilder b(get_spec("task_scheduling"), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"d", inst.deadline}, {"w", inst.weight}});

  auto order = iota_order(n);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return inst.weight[x] > inst.weight[y] || (inst.weight[x] == inst.weight[y] && x < y);
  });
  const Ints pred = chain(order);
  Ints selected(static_cast<std::size_t>(n), 0);
  int accepted = 0;
  emit(b, {{"pred_h", pred}, {"selected_h", selected}, {"i", one_hot(order[0], n)},
           {"t", graph_scalar(0.0)}});
  for (int i : order) {
    selected[i] = 1;
    if (schedulable(selected, inst.deadline)) {
      ++accepted;
    } else {
      selected[i] = 0;
    }
    emit(b, {{"pred_h", pred}, {"selected_h", selected}, {"i", one_hot(i, n)},
             {"t", graph_scalar(static_cast<double>(accepted))}});
  }
  push_outputs(b, {{"selected", selected}});
  return b.finalize();
}

}  // namespace

Trajectory sort_trajectory(SortKind kind, const SeqInstance& instance) {
  switch (kind) {
    case SortKind::Insertion: return insertion_sort(instance);
    case SortKind::Bubble: return bubble_sort(instance);
    case SortKind::Heap: return heapsort(instance);
    case SortKind::Quick: return quicksort(instance);
  }
  throw Error(ErrorKind::UnknownAlgorithm, "sort kind");
}

Trajectory search_trajectory(SearchKind kind, const SeqInstance& instance) {
  switch (kind) {
    case SearchKind::Minimum: return minimum(instance);
    case SearchKind::BinarySearch: return binary_search(instance);
    case SearchKind::Quickselect: return quickselect(instance);
  }
  throw Error(ErrorKind::UnknownAlgorithm, "search kind");
}

Trajectory max_subarray_trajectory(const SeqInstance& inst) {
  auto b = keyed_builder("find_maximum_subarray", inst);
  const int n = b.nodes();
  const Reals& x = inst.key;

  double best_sum = x[0];
  double cur_sum = x[0];
  int best_start = 0, best_end = 0, cur_start = 0;
  auto record = [&](int i) {
    emit(b, {{"best_start", one_hot(best_start, n)},
             {"best_end", one_hot(best_end, n)},
             {"cur_start", one_hot(cur_start, n)},
             {"i", one_hot(i, n)},
             {"best_sum", graph_scalar(best_sum)},
             {"cur_sum", graph_scalar(cur_sum)}});
  };
  record(0);
  for (int i = 1; i < n; ++i) {
    const double extended = cur_sum + x[i];
    if (extended >= x[i]) {
      cur_sum = extended;
    } else {
      cur_sum = x[i];
      cur_start = i;
    }
    if (cur_sum > best_sum) {
      best_sum = cur_sum;
      best_start = cur_start;
      best_end = i;
    }
    record(i);
  }
  push_outputs(b, {{"start", one_hot(best_start, n)}, {"end", one_hot(best_end, n)}});
  return b.finalize();
}

Trajectory greedy_trajectory(GreedyKind kind, const SeqInstance& instance) {
  switch (kind) {
    case GreedyKind::ActivitySelection: return activity_selection(instance);
    case GreedyKind::TaskScheduling: return task_scheduling(instance);
  }
  throw Error(ErrorKind::UnknownAlgorithm, "greedy kind");
}

}  // namespace algotrace
