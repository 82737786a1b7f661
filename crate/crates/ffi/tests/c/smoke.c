#include <stdio.h>
#include <string.h>

#include "coxbrauer.h"

int main(void) {
    CbTree *tree = NULL;
    if (cb_tree_fixture("2g2", 27, 19, 0, 0, &tree) != CB_STATUS_OK) {
        fprintf(stderr, "fixture: %s\n", cb_last_error());
        return 1;
    }
    CbAlgebra *alg = NULL;
    if (cb_algebra_new(tree, 0, &alg) != CB_STATUS_OK) {
        return 1;
    }
    size_t end_dim = 0;
    CbStatus st = cb_algebra_check_tilting(alg, &end_dim);
    printf("edges=%zu dim=%zu end=%zu\n", cb_tree_num_edges(tree), cb_algebra_dim(alg), end_dim);
    cb_algebra_free(alg);

    CbTree *bad = NULL;
    if (cb_tree_star(7, 3, 3, &bad) != CB_STATUS_INVALID_INPUT || cb_last_error() == NULL) {
        return 1;
    }
    cb_tree_free(tree);
    return st == CB_STATUS_OK && end_dim == 114 ? 0 : 1;
}
