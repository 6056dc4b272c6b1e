/** Wire formats shared with the designer service. */
export const TARGETS = ["keras", "tensorflow", "pytorch", "caffe-prototxt"];
export function defaultHyperparameters() {
    return {
        batch_size: 32,
        epochs: 10,
        loss: "categorical_crossentropy",
        metrics: ["accuracy"],
        optimizer: { extra: {}, kind: "sgd", learning_rate: 0.01 },
    };
}
