% Three-tier layering: each layer may use only the layer immediately below it.
virtualScope('mini.business',
    ['mini.content',
    'mini.auth',
    'mini.admin']).
layers(['mini.app',
    'mini.business',
    'mini.storage']).
