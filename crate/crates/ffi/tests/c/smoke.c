#include <stdio.h>
#include <string.h>

#include "valinf.h"

int main(void) {
    const int64_t entries[] = {18, 12, 33, 4};
    ValinfCore *core = NULL;
    if (valinf_core_new(entries, 4, &core) != VALINF_STATUS_OK) return 1;

    int64_t frob = 0;
    if (valinf_core_frobenius(core, &frob) != VALINF_STATUS_OK || frob != 47) return 2;

    int64_t pairs[4];
    size_t n = 0;
    if (valinf_core_em_pairs(core, pairs, 4, &n) != VALINF_STATUS_OK || n != 4) return 3;
    if (pairs[0] != 21 || pairs[1] != 6 || pairs[2] != 62 || pairs[3] != 3) return 4;

    int64_t residual = 0;
    if (valinf_noether_residual(core, -5, &residual) != VALINF_STATUS_OK || residual != -5) return 5;
    valinf_core_free(core);

    const int64_t bad[] = {4, 6};
    if (valinf_core_new(bad, 2, &core) != VALINF_STATUS_INVALID_SEQUENCE || core != NULL) return 6;

    ValinfSequence *seq = NULL;
    if (valinf_sequence_from_json("{\"type\":\"B\",\"core\":[5,3]}", &seq) != VALINF_STATUS_OK) return 7;
    char text[64];
    if (valinf_sequence_describe(seq, text, sizeof text, &n) != VALINF_STATUS_OK) return 8;
    valinf_sequence_free(seq);
    printf("%s\n", text);
    return strcmp(text, "{(0,5),(0,3),(-1,25)}") == 0 ? 0 : 9;
}
