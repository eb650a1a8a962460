#include <math.h>
#include <stdio.h>

#include "lackwalk.h"

#define CHECK(cond)                                         \
    do {                                                    \
        if (!(cond)) {                                      \
            fprintf(stderr, "check failed: %s\n", #cond);   \
            return 1;                                       \
        }                                                   \
    } while (0)

int main(void) {
    LwInstance *inst = NULL;
    CHECK(lw_instance_new(2, 0, 1, LW_COIN_FLIP, &inst) == LW_STATUS_DOMAIN);
    CHECK(lw_last_error_message() != NULL);

    CHECK(lw_instance_new(1024, 2, 1, LW_COIN_FLIP, &inst) == LW_STATUS_OK);
    LwPrediction pred;
    CHECK(lw_predict(inst, &pred) == LW_STATUS_OK);
    CHECK(fabs(pred.runtime - 41.05) < 0.01);

    LwTrace *trace = NULL;
    CHECK(lw_subspace_evolve(inst, 100, &trace) == LW_STATUS_OK);
    size_t len = lw_trace_len(trace);
    CHECK(len == 101);
    double probs[101];
    CHECK(lw_trace_copy(trace, NULL, probs, len) == LW_STATUS_OK);
    LwPeak peak;
    CHECK(lw_trace_peak(trace, &peak) == LW_STATUS_OK);
    CHECK(peak.index == 41);
    CHECK(probs[41] == peak.probability);
    lw_trace_free(trace);
    lw_instance_free(inst);

    double dev = 1.0;
    CHECK(lw_grover_equivalence_check(16, &dev) == LW_STATUS_OK);
    CHECK(dev <= 1e-12);
    printf("ok %s\n", lw_version());
    return 0;
}
